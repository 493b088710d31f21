#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lfcap/errors.hpp"
#include "lfcap/lab/metrics.hpp"
#include "testing.hpp"

using namespace lfcap;
using namespace lfcap::lab;

namespace {

// Direct SSIM: full 11x11 Gaussian window evaluated at every valid center.
double ssim_direct(const Image& a, const Image& b) {
  double g[11], total = 0.0;
  for (int i = 0; i < 11; ++i) total += g[i] = std::exp(-((i - 5) * (i - 5)) / (2 * 1.5 * 1.5));
  for (double& x : g) x /= total;
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  double sum = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    double ch = 0.0;
    int count = 0;
    for (int y = 5; y < a.height() - 5; ++y) {
      for (int x = 5; x < a.width() - 5; ++x) {
        double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
        for (int dy = -5; dy <= 5; ++dy) {
          for (int dx = -5; dx <= 5; ++dx) {
            const double w = g[dy + 5] * g[dx + 5];
            const double va = a.at(c, x + dx, y + dy), vb = b.at(c, x + dx, y + dy);
            ma += w * va;
            mb += w * vb;
            saa += w * va * va;
            sbb += w * vb * vb;
            sab += w * va * vb;
          }
        }
        const double va = saa - ma * ma, vb = sbb - mb * mb, cov = sab - ma * mb;
        ch += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
        ++count;
      }
    }
    sum += ch / count;
  }
  return sum / a.channels();
}

}  // namespace

TEST_CASE("psnr closed form") {
  const Image a(8, 8, 3, 0.2F);
  CHECK(psnr(a, a) == std::numeric_limits<double>::infinity());
  const Image b(8, 8, 3, 0.3F);
  CHECK(mse(a, b) == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-5));
  CHECK_THROWS_AS(psnr(a, Image(8, 7, 3)), DimensionError);
}

TEST_CASE("psnr matches direct evaluation on random pairs") {
  std::mt19937 rng(2);
  for (int i = 0; i < 5; ++i) {
    const Image a = testing::random_image(31, 17, 3, rng);
    const Image b = testing::random_image(31, 17, 3, rng);
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
      const double d = static_cast<double>(a.data()[k]) - b.data()[k];
      s += d * d;
    }
    CHECK(std::abs(psnr(a, b) - 10.0 * std::log10(a.data().size() / s)) <= 1e-9);
  }
}

TEST_CASE("ssim of identical and constant images") {
  std::mt19937 rng(3);
  const Image a = testing::random_image(20, 20, 3, rng);
  CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  const double c1 = 1e-4;
  CHECK(ssim(Image(16, 16, 3, 0.0F), Image(16, 16, 3, 1.0F)) == doctest::Approx(c1 / (1.0 + c1)).epsilon(1e-6));
  CHECK_THROWS_AS(ssim(Image(10, 20, 3), Image(10, 20, 3)), DimensionError);
}

TEST_CASE("ssim matches a direct window evaluation") {
  std::mt19937 rng(4);
  for (int i = 0; i < 3; ++i) {
    const Image a = testing::random_image(64, 64, 3, rng);
    Image b = a;
    std::normal_distribution<float> noise(0.0F, 0.1F * (i + 1));
    for (float& v : b.data()) v += noise(rng);
    CHECK(std::abs(ssim(a, b) - ssim_direct(a, b)) <= 1e-4);
  }
  const Image x = testing::random_image(64, 64, 3, rng);
  const Image y = testing::random_image(64, 64, 3, rng);
  CHECK(std::abs(ssim(x, y) - ssim_direct(x, y)) <= 1e-4);
}
