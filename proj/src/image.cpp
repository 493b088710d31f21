#include "lfcap/image.hpp"

#include <algorithm>
#include <string>

#include "lfcap/errors.hpp"

namespace lfcap {

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  if (width <= 0 || height <= 0 || channels <= 0) {
    throw DimensionError("image dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

void Image::fill(float value) { std::fill(data_.begin(), data_.end(), value); }

void require_same_size(const Image& a, const Image& b, const char* what) {
  if (!a.same_size(b)) {
    throw DimensionError(std::string(what) + ": resolution mismatch (" + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()) + ")");
  }
}

void require_channels(const Image& image, int channels, const char* what) {
  if (image.channels() != channels) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(channels) + " channels, got " +
                         std::to_string(image.channels()));
  }
}

}  // namespace lfcap
