#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lfcap/image.hpp"

namespace lfcap::scene {

/// 8-bit RGB PNG. Values are clamped to [0,1] and rounded to the nearest
/// code value, so a round trip is exact to within 0.5/255.
std::vector<std::uint8_t> encode_png_rgb8(const Image& rgb);
void write_png_rgb8(const std::filesystem::path& path, const Image& rgb);

/// Reads 8-bit or 16-bit gray/RGB/RGBA PNGs into a 3-channel image in [0,1].
Image read_png_rgb(const std::filesystem::path& path);
Image decode_png_rgb(const std::vector<std::uint8_t>& bytes);

/// Single-channel 16-bit PNG (e.g. depth in millimeters).
struct Gray16 {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> values;  // row-major
};
void write_png_gray16(const std::filesystem::path& path, const Gray16& image);
Gray16 read_png_gray16(const std::filesystem::path& path);

}  // namespace lfcap::scene
