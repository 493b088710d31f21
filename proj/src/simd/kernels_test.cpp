#include <doctest.h>

#include <cstdlib>
#include <random>
#include <stdexcept>
#include <vector>

#include "lfcap/simd/kernels.hpp"

using namespace lfcap::simd;

namespace {

std::vector<float> random_vec(std::size_t n, std::mt19937& rng, float lo, float hi) {
  std::uniform_real_distribution<float> d(lo, hi);
  std::vector<float> v(n);
  for (float& x : v) x = d(rng);
  return v;
}

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

// Sizes around the 8-wide vector boundary, including pure-tail inputs.
constexpr std::size_t kSizes[] = {0, 1, 7, 8, 9, 15, 16, 17, 63, 64, 67, 1001};

}  // namespace

TEST_CASE("scalar kernels are always available") {
  CHECK(isa_available(Isa::scalar));
  CHECK(kernels_for(Isa::scalar).isa == Isa::scalar);
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_available(active_isa()));
}

TEST_CASE("unavailable isa is rejected") {
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (!isa_available(isa)) CHECK_THROWS_AS(kernels_for(isa), std::invalid_argument);
  }
}

TEST_CASE("LFCAP_SIMD=scalar forces the reference path") {
  // Holds when LFCAP_SIMD was set before start-up (a dedicated ctest entry).
  if (const char* v = std::getenv("LFCAP_SIMD"); v && std::string(v) == "scalar") {
    CHECK(active_isa() == Isa::scalar);
  }
}

TEST_CASE("scalar composite step matches the over operator") {
  const Kernels& k = kernels_for(Isa::scalar);
  float a[2] = {0.5F, 1.0F};
  float r[2] = {1.0F, 0.0F}, g[2] = {0.0F, 0.0F}, b[2] = {0.0F, 1.0F};
  float t = 1.0F, cr = 0, cg = 0, cb = 0, ca = 0, cd = 0;
  CompositeAccum acc{&t, &cr, &cg, &cb, &ca, &cd};
  k.composite_step(&a[0], &r[0], &g[0], &b[0], 0.5F, acc, 1);
  k.composite_step(&a[1], &r[1], &g[1], &b[1], 0.25F, acc, 1);
  CHECK(cr == doctest::Approx(0.5));
  CHECK(cb == doctest::Approx(0.5));
  CHECK(ca == doctest::Approx(1.0));
  CHECK(cd == doctest::Approx(0.5 * 0.5 + 0.5 * 0.25));
  CHECK(t == 0.0F);
}

TEST_CASE("vector kernels agree with the scalar reference") {
  const Kernels& ref = kernels_for(Isa::scalar);
  const auto isas = vector_isas();
  if (isas.empty()) MESSAGE("no vector ISA on this host; equivalence checks skipped");
  std::mt19937 rng(7);
  for (Isa isa : isas) {
    const Kernels& vec = kernels_for(isa);
    CAPTURE(isa_name(isa));
    for (std::size_t n : kSizes) {
      CAPTURE(n);
      {  // composite_step
        auto a = random_vec(n, rng, 0, 1), r = random_vec(n, rng, 0, 1), g = random_vec(n, rng, 0, 1),
             b = random_vec(n, rng, 0, 1);
        for (std::size_t i = 0; i < n; i += 5) a[i] = (i % 2) ? 1.0F : 0.0F;
        std::vector<float> st(n, 1), sr(n), sg(n), sb(n), sa(n), sd(n);
        auto vt = st, vr = sr, vg = sg, vb = sb, va = sa, vd = sd;
        for (int layer = 0; layer < 4; ++layer) {
          ref.composite_step(a.data(), r.data(), g.data(), b.data(), 0.3F, {st.data(), sr.data(), sg.data(), sb.data(), sa.data(), sd.data()}, n);
          vec.composite_step(a.data(), r.data(), g.data(), b.data(), 0.3F, {vt.data(), vr.data(), vg.data(), vb.data(), va.data(), vd.data()}, n);
        }
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(std::abs(st[i] - vt[i]) <= 1e-6F);
          CHECK(std::abs(sr[i] - vr[i]) <= 1e-6F);
          CHECK(std::abs(sg[i] - vg[i]) <= 1e-6F);
          CHECK(std::abs(sb[i] - vb[i]) <= 1e-6F);
          CHECK(std::abs(sa[i] - va[i]) <= 1e-6F);
          CHECK(std::abs(sd[i] - vd[i]) <= 1e-6F);
        }
        // Without a disparity target neither path touches one.
        ref.composite_step(a.data(), r.data(), g.data(), b.data(), 0.3F, {st.data(), sr.data(), sg.data(), sb.data(), sa.data(), nullptr}, n);
        vec.composite_step(a.data(), r.data(), g.data(), b.data(), 0.3F, {vt.data(), vr.data(), vg.data(), vb.data(), va.data(), nullptr}, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sr[i] - vr[i]) <= 1e-6F);
      }
      {  // weighted_accumulate
        auto alpha = random_vec(n, rng, 0, 1), value = random_vec(n, rng, 0, 1), acc = random_vec(n, rng, 0, 1);
        auto acc2 = acc;
        ref.weighted_accumulate(0.37F, alpha.data(), value.data(), acc.data(), n);
        vec.weighted_accumulate(0.37F, alpha.data(), value.data(), acc2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(acc[i] - acc2[i]) <= 1e-6F);
      }
      {  // safe_divide
        auto num = random_vec(n, rng, 0, 1), den = random_vec(n, rng, -0.2F, 1);
        for (std::size_t i = 0; i < n; i += 3) den[i] = 0.0F;
        std::vector<float> o1(n), o2(n);
        ref.safe_divide(num.data(), den.data(), o1.data(), n);
        vec.safe_divide(num.data(), den.data(), o2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(std::abs(o1[i] - o2[i]) <= 1e-6F * std::max(1.0F, std::abs(o1[i])));
          if (den[i] <= 0.0F) CHECK(o2[i] == 0.0F);
        }
      }
      {  // clamp_unit
        auto in = random_vec(n, rng, -1, 2);
        std::vector<float> o1(n), o2(n);
        ref.clamp_unit(in.data(), o1.data(), n);
        vec.clamp_unit(in.data(), o2.data(), n);
        CHECK(o1 == o2);
      }
      {  // over_background
        auto alpha = random_vec(n, rng, 0, 1), c = random_vec(n, rng, 0, 1);
        std::vector<float> o1(n), o2(n);
        ref.over_background(alpha.data(), c.data(), 0.2F, o1.data(), n);
        vec.over_background(alpha.data(), c.data(), 0.2F, o2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-6F);
      }
      {  // l1_exceeds
        auto a0 = random_vec(n, rng, 0, 1), a1 = random_vec(n, rng, 0, 1), a2 = random_vec(n, rng, 0, 1);
        auto b0 = random_vec(n, rng, 0, 1), b1 = random_vec(n, rng, 0, 1), b2 = random_vec(n, rng, 0, 1);
        const float* a[3] = {a0.data(), a1.data(), a2.data()};
        const float* b[3] = {b0.data(), b1.data(), b2.data()};
        std::vector<std::uint8_t> m1(n), m2(n);
        const std::size_t c1 = ref.l1_exceeds(a, b, 0.9F, m1.data(), n);
        const std::size_t c2 = vec.l1_exceeds(a, b, 0.9F, m2.data(), n);
        CHECK(c1 == c2);
        CHECK(m1 == m2);
      }
      {  // select_constant
        auto src = random_vec(n, rng, 0, 1);
        std::vector<std::uint8_t> mask(n);
        for (std::size_t i = 0; i < n; ++i) mask[i] = (i * 7 + 3) % 4 == 0;
        std::vector<float> o1(n), o2(n);
        ref.select_constant(mask.data(), 0.75F, src.data(), o1.data(), n);
        vec.select_constant(mask.data(), 0.75F, src.data(), o2.data(), n);
        CHECK(o1 == o2);
      }
      {  // sum_squared_diff
        auto a = random_vec(n, rng, 0, 1), b = random_vec(n, rng, 0, 1);
        const double s1 = ref.sum_squared_diff(a.data(), b.data(), n);
        const double s2 = vec.sum_squared_diff(a.data(), b.data(), n);
        CHECK(std::abs(s1 - s2) <= 1e-9 * std::max(1.0, s1));
      }
    }
  }
}
