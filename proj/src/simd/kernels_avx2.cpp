// AVX2 variants, built with -mavx2 and no FMA contraction: each lane runs
// the scalar mul/add sequence.

#include <immintrin.h>

#include <cmath>

#include "tables.hpp"

namespace lfcap::simd::detail {
namespace {

constexpr std::size_t kLanes = 8;

void composite_step(const float* a, const float* r, const float* g, const float* b, float disparity,
                    CompositeAccum acc, std::size_t n) {
  const __m256 one = _mm256_set1_ps(1.0F);
  const __m256 disp = _mm256_set1_ps(disparity);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256 t = _mm256_loadu_ps(acc.transmittance + i);
    const __m256 av = _mm256_loadu_ps(a + i);
    const __m256 w = _mm256_mul_ps(t, av);
    _mm256_storeu_ps(acc.r + i, _mm256_add_ps(_mm256_loadu_ps(acc.r + i), _mm256_mul_ps(w, _mm256_loadu_ps(r + i))));
    _mm256_storeu_ps(acc.g + i, _mm256_add_ps(_mm256_loadu_ps(acc.g + i), _mm256_mul_ps(w, _mm256_loadu_ps(g + i))));
    _mm256_storeu_ps(acc.b + i, _mm256_add_ps(_mm256_loadu_ps(acc.b + i), _mm256_mul_ps(w, _mm256_loadu_ps(b + i))));
    _mm256_storeu_ps(acc.alpha + i, _mm256_add_ps(_mm256_loadu_ps(acc.alpha + i), w));
    if (acc.disparity) {
      _mm256_storeu_ps(acc.disparity + i, _mm256_add_ps(_mm256_loadu_ps(acc.disparity + i), _mm256_mul_ps(w, disp)));
    }
    _mm256_storeu_ps(acc.transmittance + i, _mm256_mul_ps(t, _mm256_sub_ps(one, av)));
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
  const __m256 wv = _mm256_set1_ps(weight);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256 wa = _mm256_mul_ps(wv, _mm256_loadu_ps(alpha + i));
    _mm256_storeu_ps(acc + i, _mm256_add_ps(_mm256_loadu_ps(acc + i), _mm256_mul_ps(wa, _mm256_loadu_ps(value + i))));
  }
  for (; i < n; ++i) acc[i] += weight * alpha[i] * value[i];
}

void safe_divide(const float* num, const float* denom, float* out, std::size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256 d = _mm256_loadu_ps(denom + i);
    const __m256 positive = _mm256_cmp_ps(d, zero, _CMP_GT_OQ);
    // Zero denominators are masked before the division.
    const __m256 safe_d = _mm256_blendv_ps(_mm256_set1_ps(1.0F), d, positive);
    const __m256 q = _mm256_div_ps(_mm256_loadu_ps(num + i), safe_d);
    _mm256_storeu_ps(out + i, _mm256_and_ps(q, positive));
  }
  for (; i < n; ++i) out[i] = denom[i] > 0.0F ? num[i] / denom[i] : 0.0F;
}

void clamp_unit(const float* in, float* out, std::size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  const __m256 one = _mm256_set1_ps(1.0F);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_ps(out + i, _mm256_min_ps(_mm256_max_ps(_mm256_loadu_ps(in + i), zero), one));
  }
  for (; i < n; ++i) out[i] = in[i] < 0.0F ? 0.0F : (in[i] > 1.0F ? 1.0F : in[i]);
}

void over_background(const float* alpha, const float* c, float background, float* out, std::size_t n) {
  const __m256 one = _mm256_set1_ps(1.0F);
  const __m256 bg = _mm256_set1_ps(background);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256 a = _mm256_loadu_ps(alpha + i);
    const __m256 v = _mm256_add_ps(_mm256_mul_ps(a, _mm256_loadu_ps(c + i)), _mm256_mul_ps(_mm256_sub_ps(one, a), bg));
    _mm256_storeu_ps(out + i, v);
  }
  for (; i < n; ++i) out[i] = alpha[i] * c[i] + (1.0F - alpha[i]) * background;
}

std::size_t l1_exceeds(const float* const a[3], const float* const b[3], float t, std::uint8_t* mask,
                       std::size_t n) {
  const __m256 abs_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x7fffffff));
  const __m256 tv = _mm256_set1_ps(t);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256 d = _mm256_and_ps(_mm256_sub_ps(_mm256_loadu_ps(a[0] + i), _mm256_loadu_ps(b[0] + i)), abs_mask);
    d = _mm256_add_ps(d, _mm256_and_ps(_mm256_sub_ps(_mm256_loadu_ps(a[1] + i), _mm256_loadu_ps(b[1] + i)), abs_mask));
    d = _mm256_add_ps(d, _mm256_and_ps(_mm256_sub_ps(_mm256_loadu_ps(a[2] + i), _mm256_loadu_ps(b[2] + i)), abs_mask));
    const int bits = _mm256_movemask_ps(_mm256_cmp_ps(d, tv, _CMP_GT_OQ));
    for (std::size_t k = 0; k < kLanes; ++k) mask[i + k] = static_cast<std::uint8_t>((bits >> k) & 1);
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
  }
  for (; i < n; ++i) {
    const float d = std::fabs(a[0][i] - b[0][i]) + std::fabs(a[1][i] - b[1][i]) + std::fabs(a[2][i] - b[2][i]);
    mask[i] = d > t ? 1 : 0;
    count += mask[i];
  }
  return count;
}

void select_constant(const std::uint8_t* mask, float value, const float* src, float* out, std::size_t n) {
  const __m256 vv = _mm256_set1_ps(value);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m128i m8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(mask + i));
    const __m256i m32 = _mm256_cvtepu8_epi32(m8);
    const __m256 sel = _mm256_castsi256_ps(_mm256_cmpgt_epi32(m32, _mm256_setzero_si256()));
    _mm256_storeu_ps(out + i, _mm256_blendv_ps(_mm256_loadu_ps(src + i), vv, sel));
  }
  for (; i < n; ++i) out[i] = mask[i] ? value : src[i];
}

double sum_squared_diff(const float* a, const float* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_cvtps_pd(_mm_loadu_ps(a + i)), _mm256_cvtps_pd(_mm_loadu_ps(b + i)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum;
}

}  // namespace

const Kernels avx2_kernels{
    Isa::avx2,       composite_step, weighted_accumulate, safe_divide,    clamp_unit,
    over_background, l1_exceeds,     select_constant,     sum_squared_diff,
};

}  // namespace lfcap::simd::detail
