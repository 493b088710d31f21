#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/scale.hpp"
#include "lfcap/scene/formats.hpp"
#include "lfcap/scene/png_io.hpp"

namespace lfcap::scene {

using nlohmann::json;

namespace {

constexpr const char* kMpiFormat = "lfcap-mpi";
constexpr const char* kFrameFormat = "lfcap-frame";

std::string layer_name(std::size_t i, const char* suffix) { return "layer_" + std::to_string(i) + suffix; }

void write_f32(const std::filesystem::path& path, std::span<const float> values) {
  std::vector<char> bytes(values.size() * 4);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint32_t bits = std::bit_cast<std::uint32_t>(values[i]);
    for (int b = 0; b < 4; ++b) bytes[i * 4 + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

Image read_f32(const std::filesystem::path& path, int width, int height) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + path.string());
  const std::size_t expected = static_cast<std::size_t>(width) * height * 4;
  if (static_cast<std::size_t>(in.tellg()) != expected) {
    throw DimensionError(path.string() + ": expected " + std::to_string(expected) + " bytes for " +
                         std::to_string(width) + "x" + std::to_string(height) + " float32");
  }
  in.seekg(0);
  std::vector<unsigned char> bytes(expected);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(expected));
  if (!in) throw IoError("short read from " + path.string());
  Image out(width, height, 1);
  std::span<float> p = out.plane(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(bytes[i * 4 + b]) << (8 * b);
    p[i] = std::bit_cast<float>(bits);
  }
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

void save_mpi(const std::filesystem::path& dir, const mpi::MpiVolume& volume) {
  ensure_dir(dir);
  json manifest = camera_to_json(volume.reference());
  manifest["format"] = kMpiFormat;
  manifest["version"] = 1;
  manifest["scale"] = volume.scale();
  manifest["depths"] = volume.depths();
  write_json_file(dir / "manifest.json", manifest);
  for (std::size_t i = 0; i < volume.layer_count(); ++i) {
    write_png_rgb8(dir / layer_name(i, ".color.png"), volume.layer(i).color());
    write_f32(dir / layer_name(i, ".sigma.f32"), volume.layer(i).density().plane(0));
  }
}

mpi::MpiVolume load_mpi(const std::filesystem::path& dir) {
  const json manifest = read_json_file(dir / "manifest.json");
  if (manifest.value("format", std::string()) != kMpiFormat) {
    throw IoError(dir.string() + ": manifest is not an MPI manifest");
  }
  const CameraModel reference = camera_from_json(manifest);
  if (!manifest.contains("depths") || !manifest.at("depths").is_array()) {
    throw IoError(dir.string() + ": manifest has no 'depths' array");
  }
  std::vector<double> depths;
  double scale = 1.0;
  try {
    depths = manifest.at("depths").get<std::vector<double>>();
    scale = manifest.value("scale", 1.0);
  } catch (const json::exception& e) {
    throw IoError(dir.string() + ": malformed manifest: " + e.what());
  }
  if (depths.empty()) throw InvariantError(dir.string() + ": MPI must have at least one layer");
  for (std::size_t i = 1; i < depths.size(); ++i) {
    if (!(depths[i] > depths[i - 1])) {
      throw InvariantError(dir.string() + ": layer depths must be strictly increasing (layer " + std::to_string(i) +
                           ")");
    }
  }

  std::vector<mpi::MpiLayer> layers;
  layers.reserve(depths.size());
  for (std::size_t i = 0; i < depths.size(); ++i) {
    Image color = read_png_rgb(dir / layer_name(i, ".color.png"));
    if (color.width() != reference.width || color.height() != reference.height) {
      throw DimensionError(dir.string() + ": " + layer_name(i, ".color.png") + " does not match manifest resolution");
    }
    Image density = read_f32(dir / layer_name(i, ".sigma.f32"), reference.width, reference.height);
    layers.emplace_back(std::move(color), std::move(density), depths[i]);
  }
  return mpi::MpiVolume(std::move(layers), reference, scale);
}

void save_frame(const std::filesystem::path& dir, const RgbdFrame& frame) {
  frame.validate();
  ensure_dir(dir);
  json meta;
  meta["format"] = kFrameFormat;
  meta["camera"] = camera_to_json(frame.camera);
  meta["depth_unit"] = "mm";
  write_json_file(dir / "frame.json", meta);
  write_png_rgb8(dir / "color.png", frame.rgb);

  Gray16 depth{frame.depth.width(), frame.depth.height(), {}};
  depth.values.reserve(frame.depth.pixel_count());
  for (float d : frame.depth.plane(0)) {
    const double mm = std::round(static_cast<double>(d) * 1000.0);
    depth.values.push_back(static_cast<std::uint16_t>(std::clamp(mm, 0.0, 65535.0)));
  }
  write_png_gray16(dir / "depth.png", depth);
}

RgbdFrame load_frame(const std::filesystem::path& dir) {
  const json meta = read_json_file(dir / "frame.json");
  if (meta.value("format", std::string()) != kFrameFormat || !meta.contains("camera")) {
    throw IoError(dir.string() + ": not a frame manifest");
  }
  RgbdFrame frame;
  frame.camera = camera_from_json(meta.at("camera"));
  frame.rgb = read_png_rgb(dir / "color.png");
  const Gray16 depth = read_png_gray16(dir / "depth.png");
  if (depth.width != frame.camera.width || depth.height != frame.camera.height) {
    throw DimensionError(dir.string() + ": depth.png does not match camera resolution");
  }
  frame.depth = Image(depth.width, depth.height, 1);
  std::span<float> p = frame.depth.plane(0);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<float>(depth.values[i] / 1000.0);
  frame.validate();
  return frame;
}

}  // namespace lfcap::scene
