#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lfcap {

/// Planar float image. Channel c occupies a contiguous width*height plane,
/// rows top to bottom. Colors are linear values in [0,1].
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, float fill = 0.0F);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }
  bool empty() const { return data_.empty(); }

  std::span<float> plane(int c) {
    return {data_.data() + c * pixel_count(), pixel_count()};
  }
  std::span<const float> plane(int c) const {
    return {data_.data() + c * pixel_count(), pixel_count()};
  }

  float& at(int c, int x, int y) { return data_[c * pixel_count() + static_cast<std::size_t>(y) * width_ + x]; }
  float at(int c, int x, int y) const {
    return data_[c * pixel_count() + static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  bool same_size(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  void fill(float value);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

// Throws DimensionError unless both images share width and height.
void require_same_size(const Image& a, const Image& b, const char* what);

// Throws DimensionError unless the image has exactly `channels` planes.
void require_channels(const Image& image, int channels, const char* what);

}  // namespace lfcap
