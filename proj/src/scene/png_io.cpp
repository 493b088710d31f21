#include "lfcap/scene/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>

#include "lfcap/errors.hpp"

namespace lfcap::scene {

namespace {

std::uint8_t to_code(float v) {
  const float c = std::clamp(v, 0.0F, 1.0F);
  return static_cast<std::uint8_t>(std::lround(c * 255.0F));
}

std::vector<std::uint8_t> interleave_rgb8(const Image& rgb) {
  require_channels(rgb, 3, "png rgb");
  const std::size_t n = rgb.pixel_count();
  std::vector<std::uint8_t> out(n * 3);
  for (int c = 0; c < 3; ++c) {
    const std::span<const float> p = rgb.plane(c);
    for (std::size_t i = 0; i < n; ++i) out[i * 3 + c] = to_code(p[i]);
  }
  return out;
}

Image finish_read(png_image& image) {
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("png decode failed: " + msg);
  }
  Image out(static_cast<int>(image.width), static_cast<int>(image.height), 3);
  const std::size_t n = out.pixel_count();
  for (int c = 0; c < 3; ++c) {
    std::span<float> p = out.plane(c);
    for (std::size_t i = 0; i < n; ++i) p[i] = buffer[i * 3 + c] / 255.0F;
  }
  return out;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path.string());
  return f;
}

}  // namespace

std::vector<std::uint8_t> encode_png_rgb8(const Image& rgb) {
  const std::vector<std::uint8_t> pixels = interleave_rgb8(rgb);
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(rgb.width());
  image.height = static_cast<png_uint_32>(rgb.height());
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels.data(), 0, nullptr)) {
    throw IoError(std::string("png encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels.data(), 0, nullptr)) {
    throw IoError(std::string("png encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

void write_png_rgb8(const std::filesystem::path& path, const Image& rgb) {
  const std::vector<std::uint8_t> bytes = encode_png_rgb8(rgb);
  FilePtr f = open_file(path, "wb");
  if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size()) {
    throw IoError("short write to " + path.string());
  }
}

Image read_png_rgb(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError("cannot read png " + path.string() + ": " + image.message);
  }
  return finish_read(image);
}

Image decode_png_rgb(const std::vector<std::uint8_t>& bytes) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw IoError(std::string("cannot decode png: ") + image.message);
  }
  return finish_read(image);
}

void write_png_gray16(const std::filesystem::path& path, const Gray16& gray) {
  if (gray.width <= 0 || gray.height <= 0 ||
      gray.values.size() != static_cast<std::size_t>(gray.width) * gray.height) {
    throw DimensionError("png gray16: size mismatch");
  }
  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png gray16: out of memory");
  }
  // Rows are converted to big-endian byte order up front.
  std::vector<std::uint8_t> row(static_cast<std::size_t>(gray.width) * 2);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png gray16: write failed for " + path.string());
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(gray.width), static_cast<png_uint_32>(gray.height), 16,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < gray.height; ++y) {
    for (int x = 0; x < gray.width; ++x) {
      const std::uint16_t v = gray.values[static_cast<std::size_t>(y) * gray.width + x];
      row[2 * x] = static_cast<std::uint8_t>(v >> 8);
      row[2 * x + 1] = static_cast<std::uint8_t>(v & 0xff);
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Gray16 read_png_gray16(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png gray16: out of memory");
  }
  Gray16 out;
  std::vector<std::uint8_t> row;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png gray16: cannot decode " + path.string());
  }
  png_init_io(png, f.get());
  png_read_info(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth != 16 || color_type != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png gray16: " + path.string() + " is not a 16-bit grayscale image");
  }
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.values.resize(static_cast<std::size_t>(out.width) * out.height);
  row.resize(png_get_rowbytes(png, info));
  for (int y = 0; y < out.height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < out.width; ++x) {
      out.values[static_cast<std::size_t>(y) * out.width + x] =
          static_cast<std::uint16_t>((row[2 * x] << 8) | row[2 * x + 1]);
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

}  // namespace lfcap::scene
