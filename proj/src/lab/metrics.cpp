#include "lfcap/lab/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "lfcap/errors.hpp"
#include "lfcap/simd/kernels.hpp"

namespace lfcap::lab {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;

void require_comparable(const Image& a, const Image& b, const char* what) {
  require_same_size(a, b, what);
  if (a.channels() != b.channels()) throw DimensionError(std::string(what) + ": channel counts differ");
  if (a.empty()) throw DimensionError(std::string(what) + ": empty image");
}

std::array<double, kWindow> gaussian() {
  std::array<double, kWindow> g{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double x = i - kWindow / 2;
    g[i] = std::exp(-x * x / (2.0 * kSigma * kSigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

// Separable valid-mode filter: (w - 10) x (h - 10) output.
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h, const std::array<double, kWindow>& g) {
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    const double* line = src.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += g[k] * line[x + k];
      rows[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += g[k] * rows[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  return out;
}

}  // namespace

double mse(const Image& a, const Image& b) {
  require_comparable(a, b, "mse");
  const double sum = simd::kernels().sum_squared_diff(a.data().data(), b.data().data(), a.data().size());
  return sum / static_cast<double>(a.data().size());
}

double psnr(const Image& a, const Image& b) {
  const double e = mse(a, b);
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / e);
}

double ssim(const Image& a, const Image& b) {
  require_comparable(a, b, "ssim");
  const int w = a.width();
  const int h = a.height();
  if (w < kWindow || h < kWindow) throw DimensionError("ssim: images must be at least 11x11");
  constexpr double c1 = (0.01 * 1.0) * (0.01 * 1.0);
  constexpr double c2 = (0.03 * 1.0) * (0.03 * 1.0);
  const auto g = gaussian();
  const std::size_t n = a.pixel_count();

  double total = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    const auto pa = a.plane(c);
    const auto pb = b.plane(c);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = pa[i];
      y[i] = pb[i];
      xx[i] = x[i] * x[i];
      yy[i] = y[i] * y[i];
      xy[i] = x[i] * y[i];
    }
    const auto mx = filter_valid(x, w, h, g);
    const auto my = filter_valid(y, w, h, g);
    const auto mxx = filter_valid(xx, w, h, g);
    const auto myy = filter_valid(yy, w, h, g);
    const auto mxy = filter_valid(xy, w, h, g);
    double sum = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
      const double vx = mxx[i] - mx[i] * mx[i];
      const double vy = myy[i] - my[i] * my[i];
      const double cov = mxy[i] - mx[i] * my[i];
      sum += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    }
    total += sum / static_cast<double>(mx.size());
  }
  return total / a.channels();
}

}  // namespace lfcap::lab
