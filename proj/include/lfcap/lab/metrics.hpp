#pragma once

#include "lfcap/image.hpp"

namespace lfcap::lab {

/// Mean squared error over every channel of two equally sized images.
double mse(const Image& a, const Image& b);

/// 10 log10(1 / MSE); +infinity for identical images.
double psnr(const Image& a, const Image& b);

/// Structural similarity with an 11x11 Gaussian window (sigma 1.5),
/// k1 = 0.01, k2 = 0.03 and dynamic range 1. Each channel is averaged over
/// the positions where the window fits entirely, then channels are
/// averaged. Throws DimensionError for images smaller than the window.
double ssim(const Image& a, const Image& b);

}  // namespace lfcap::lab
