#pragma once

// Per-pixel arithmetic kernels behind the compositing, blending, overlay and
// metric operations. Each kernel exists as a scalar reference and, where the
// target supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The active
// table is chosen once at runtime from CPU features; LFCAP_SIMD=scalar in the
// environment forces the reference path.
//
// All kernels operate on planar float arrays of length n and never read or
// write past n. Vector variants agree with the scalar reference within 1e-6.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace lfcap::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct CompositeAccum {
  float* transmittance;
  float* r;
  float* g;
  float* b;
  float* alpha;
  float* disparity;  // may be null
};

struct Kernels {
  Isa isa;

  // One front-to-back over step:
  //   w = T*a; C += w*c; A += w; Disp += w*disparity; T *= (1 - a)
  void (*composite_step)(const float* a, const float* r, const float* g, const float* b, float disparity,
                         CompositeAccum acc, std::size_t n);

  // acc += weight * alpha * value
  void (*weighted_accumulate)(float weight, const float* alpha, const float* value, float* acc, std::size_t n);

  // out = denom > 0 ? num / denom : 0
  void (*safe_divide)(const float* num, const float* denom, float* out, std::size_t n);

  // out = clamp(in, 0, 1)
  void (*clamp_unit)(const float* in, float* out, std::size_t n);

  // out = alpha * c + (1 - alpha) * background
  void (*over_background)(const float* alpha, const float* c, float background, float* out, std::size_t n);

  // mask = |a0-b0| + |a1-b1| + |a2-b2| > t; returns the number of set entries.
  std::size_t (*l1_exceeds)(const float* const a[3], const float* const b[3], float t, std::uint8_t* mask,
                            std::size_t n);

  // out = mask ? value : src
  void (*select_constant)(const std::uint8_t* mask, float value, const float* src, float* out, std::size_t n);

  // sum (a - b)^2 accumulated in double
  double (*sum_squared_diff)(const float* a, const float* b, std::size_t n);
};

/// Kernel table selected for this process.
const Kernels& kernels();

/// Table for a specific ISA; throws std::invalid_argument if unavailable.
const Kernels& kernels_for(Isa isa);

bool isa_available(Isa isa);

Isa active_isa();

}  // namespace lfcap::simd
