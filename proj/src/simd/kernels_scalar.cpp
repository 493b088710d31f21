#include <cmath>

#include "tables.hpp"

namespace lfcap::simd::detail {
namespace {

void composite_step(const float* a, const float* r, const float* g, const float* b, float disparity,
                    CompositeAccum acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) acc[i] += weight * alpha[i] * value[i];
}

void safe_divide(const float* num, const float* denom, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = denom[i] > 0.0F ? num[i] / denom[i] : 0.0F;
}

void clamp_unit(const float* in, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i] < 0.0F ? 0.0F : (in[i] > 1.0F ? 1.0F : in[i]);
}

void over_background(const float* alpha, const float* c, float background, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha[i] * c[i] + (1.0F - alpha[i]) * background;
}

std::size_t l1_exceeds(const float* const a[3], const float* const b[3], float t, std::uint8_t* mask,
                       std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
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
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum;
}

}  // namespace

const Kernels scalar_kernels{
    Isa::scalar,   composite_step,  weighted_accumulate, safe_divide,    clamp_unit,
    over_background, l1_exceeds,    select_constant,     sum_squared_diff,
};

}  // namespace lfcap::simd::detail
