// NEON variants for aarch64. vmulq/vaddq only, matching the scalar sequence.

#include <arm_neon.h>

#include <cmath>

#include "tables.hpp"

namespace lfcap::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

void composite_step(const float* a, const float* r, const float* g, const float* b, float disparity,
                    CompositeAccum acc, std::size_t n) {
  const float32x4_t one = vdupq_n_f32(1.0F);
  const float32x4_t disp = vdupq_n_f32(disparity);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float32x4_t t = vld1q_f32(acc.transmittance + i);
    const float32x4_t av = vld1q_f32(a + i);
    const float32x4_t w = vmulq_f32(t, av);
    vst1q_f32(acc.r + i, vaddq_f32(vld1q_f32(acc.r + i), vmulq_f32(w, vld1q_f32(r + i))));
    vst1q_f32(acc.g + i, vaddq_f32(vld1q_f32(acc.g + i), vmulq_f32(w, vld1q_f32(g + i))));
    vst1q_f32(acc.b + i, vaddq_f32(vld1q_f32(acc.b + i), vmulq_f32(w, vld1q_f32(b + i))));
    vst1q_f32(acc.alpha + i, vaddq_f32(vld1q_f32(acc.alpha + i), w));
    if (acc.disparity) vst1q_f32(acc.disparity + i, vaddq_f32(vld1q_f32(acc.disparity + i), vmulq_f32(w, disp)));
    vst1q_f32(acc.transmittance + i, vmulq_f32(t, vsubq_f32(one, av)));
  }
  for (; i < n; ++i) {
    const float t = acc.transmittance[i];
    const float w = t * a[i];
    acc.r[i] += w * r[i];
    acc.g[i] += w * g[i];
    acc.b[i] += w * b[i];
    acc.alpha[i] += w;
    if (acc.disparity) acc.disparity[i] += w * disparity;
    acc.transmittance[i] = t * (1.0F - a[i]);
  }
}

void weighted_accumulate(float weight, const float* alpha, const float* value, float* acc, std::size_t n) {
  const float32x4_t wv = vdupq_n_f32(weight);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float32x4_t wa = vmulq_f32(wv, vld1q_f32(alpha + i));
    vst1q_f32(acc + i, vaddq_f32(vld1q_f32(acc + i), vmulq_f32(wa, vld1q_f32(value + i))));
  }
  for (; i < n; ++i) acc[i] += weight * alpha[i] * value[i];
}

void safe_divide(const float* num, const float* denom, float* out, std::size_t n) {
  const float32x4_t zero = vdupq_n_f32(0.0F);
  const float32x4_t one = vdupq_n_f32(1.0F);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float32x4_t d = vld1q_f32(denom + i);
    const uint32x4_t positive = vcgtq_f32(d, zero);
    const float32x4_t q = vdivq_f32(vld1q_f32(num + i), vbslq_f32(positive, d, one));
    vst1q_f32(out + i, vbslq_f32(positive, q, zero));
  }
  for (; i < n; ++i) out[i] = denom[i] > 0.0F ? num[i] / denom[i] : 0.0F;
}

void clamp_unit(const float* in, float* out, std::size_t n) {
  const float32x4_t zero = vdupq_n_f32(0.0F);
  const float32x4_t one = vdupq_n_f32(1.0F);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_f32(out + i, vminq_f32(vmaxq_f32(vld1q_f32(in + i), zero), one));
  for (; i < n; ++i) out[i] = in[i] < 0.0F ? 0.0F : (in[i] > 1.0F ? 1.0F : in[i]);
}

void over_background(const float* alpha, const float* c, float background, float* out, std::size_t n) {
  const float32x4_t one = vdupq_n_f32(1.0F);
  const float32x4_t bg = vdupq_n_f32(background);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float32x4_t a = vld1q_f32(alpha + i);
    vst1q_f32(out + i, vaddq_f32(vmulq_f32(a, vld1q_f32(c + i)), vmulq_f32(vsubq_f32(one, a), bg)));
  }
  for (; i < n; ++i) out[i] = alpha[i] * c[i] + (1.0F - alpha[i]) * background;
}

std::size_t l1_exceeds(const float* const a[3], const float* const b[3], float t, std::uint8_t* mask,
                       std::size_t n) {
  const float32x4_t tv = vdupq_n_f32(t);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float32x4_t d = vabdq_f32(vld1q_f32(a[0] + i), vld1q_f32(b[0] + i));
    d = vaddq_f32(d, vabdq_f32(vld1q_f32(a[1] + i), vld1q_f32(b[1] + i)));
    d = vaddq_f32(d, vabdq_f32(vld1q_f32(a[2] + i), vld1q_f32(b[2] + i)));
    const uint32x4_t gt = vshrq_n_u32(vcgtq_f32(d, tv), 31);
    std::uint32_t bits[4];
    vst1q_u32(bits, gt);
    for (std::size_t k = 0; k < kLanes; ++k) {
      mask[i + k] = static_cast<std::uint8_t>(bits[k]);
      count += bits[k];
    }
  }
  for (; i < n; ++i) {
    const float d = std::fabs(a[0][i] - b[0][i]) + std::fabs(a[1][i] - b[1][i]) + std::fabs(a[2][i] - b[2][i]);
    mask[i] = d > t ? 1 : 0;
    count += mask[i];
  }
  return count;
}

void select_constant(const std::uint8_t* mask, float value, const float* src, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mask[i] ? value : src[i];
}

double sum_squared_diff(const float* a, const float* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vcvt_f64_f32(vld1_f32(a + i)), vcvt_f64_f32(vld1_f32(b + i)));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum;
}

}  // namespace

const Kernels neon_kernels{
    Isa::neon,       composite_step, weighted_accumulate, safe_divide,    clamp_unit,
    over_background, l1_exceeds,     select_constant,     sum_squared_diff,
};

}  // namespace lfcap::simd::detail
