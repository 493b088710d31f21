#include <fstream>
#include <sstream>

#include "lfcap/errors.hpp"
#include "lfcap/scene/formats.hpp"
#include "lfcap/scene/png_io.hpp"

namespace lfcap::scene {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed key '") + key + "': " + e.what());
  }
}

Eigen::Vector3d vec3(const json& j, const char* key) {
  const auto v = required<std::vector<double>>(j, key);
  if (v.size() != 3) throw IoError(std::string("'") + key + "' must have 3 numbers");
  return {v[0], v[1], v[2]};
}

json vec3_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

json rgb_json(const Rgb& c) { return json::array({c[0], c[1], c[2]}); }

Rgb rgb(const json& j, const char* key) {
  const auto v = required<std::vector<float>>(j, key);
  if (v.size() != 3) throw IoError(std::string("'") + key + "' must have 3 numbers");
  return {v[0], v[1], v[2]};
}

Eigen::Matrix3d rotation_from(const json& j) {
  const auto r = required<std::vector<double>>(j, "rotation");
  if (r.size() != 9) throw IoError("'rotation' must have 9 numbers (row-major)");
  Eigen::Matrix3d m;
  m << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
  return m;
}

json rotation_json(const Eigen::Matrix3d& r) {
  json out = json::array();
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col) out.push_back(r(row, col));
  return out;
}

json texture_json(const Texture& t) {
  switch (t.kind) {
    case Texture::Kind::solid:
      return {{"type", "solid"}, {"color", rgb_json(t.a)}};
    case Texture::Kind::checker:
      return {{"type", "checker"}, {"colors", {rgb_json(t.a), rgb_json(t.b)}}, {"cell", t.cell}};
    case Texture::Kind::gradient:
      return {{"type", "gradient"}, {"from", rgb_json(t.a)}, {"to", rgb_json(t.b)}, {"axis", t.axis == 0 ? "u" : "v"}};
    case Texture::Kind::image:
      return {{"type", "image"}, {"path", t.image_path}};
  }
  return {};
}

Texture texture_from(const json& j, const std::filesystem::path& base_dir) {
  const auto type = required<std::string>(j, "type");
  if (type == "solid") return Texture::solid(rgb(j, "color"));
  if (type == "checker") {
    const json colors = required<json>(j, "colors");
    if (!colors.is_array() || colors.size() != 2) throw IoError("checker texture needs two colors");
    const json pair{{"a", colors[0]}, {"b", colors[1]}};
    return Texture::checker(rgb(pair, "a"), rgb(pair, "b"), required<double>(j, "cell"));
  }
  if (type == "gradient") {
    const auto axis = j.value("axis", std::string("u"));
    if (axis != "u" && axis != "v") throw IoError("gradient axis must be 'u' or 'v'");
    return Texture::gradient(rgb(j, "from"), rgb(j, "to"), axis == "u" ? 0 : 1);
  }
  if (type == "image") {
    Texture t;
    t.kind = Texture::Kind::image;
    t.image_path = required<std::string>(j, "path");
    std::filesystem::path p(t.image_path);
    if (p.is_relative()) p = base_dir / p;
    t.image = std::make_shared<const Image>(read_png_rgb(p));
    return t;
  }
  throw IoError("unknown texture type '" + type + "'");
}

}  // namespace

json camera_to_json(const CameraModel& cam) {
  return {{"width", cam.width}, {"height", cam.height},           {"f", cam.f},
          {"cx", cam.cx},       {"cy", cam.cy},                   {"rotation", rotation_json(cam.rotation)},
          {"translation", vec3_json(cam.center)}};
}

CameraModel camera_from_json(const json& j) {
  CameraModel cam;
  cam.width = required<int>(j, "width");
  cam.height = required<int>(j, "height");
  cam.f = required<double>(j, "f");
  cam.cx = required<double>(j, "cx");
  cam.cy = required<double>(j, "cy");
  cam.rotation = rotation_from(j);
  cam.center = vec3(j, "translation");
  cam.validate();
  return cam;
}

json pose_to_json(const CameraModel& cam) {
  return {{"rotation", rotation_json(cam.rotation)}, {"center", vec3_json(cam.center)}};
}

CameraModel pose_from_json(const json& j, const CameraModel& intrinsics) {
  CameraModel cam = intrinsics.with_pose(rotation_from(j), vec3(j, "center"));
  cam.validate();
  return cam;
}

json trajectory_to_json(const Trajectory& traj) {
  traj.validate();
  const CameraModel& k = traj.poses.front();
  json poses = json::array();
  for (const CameraModel& cam : traj.poses) poses.push_back(pose_to_json(cam));
  return {{"intrinsics", {{"width", k.width}, {"height", k.height}, {"f", k.f}, {"cx", k.cx}, {"cy", k.cy}}},
          {"poses", poses},
          {"spacing", traj.spacing}};
}

Trajectory trajectory_from_json(const json& j) {
  const json k = required<json>(j, "intrinsics");
  CameraModel intrinsics;
  intrinsics.width = required<int>(k, "width");
  intrinsics.height = required<int>(k, "height");
  intrinsics.f = required<double>(k, "f");
  intrinsics.cx = required<double>(k, "cx");
  intrinsics.cy = required<double>(k, "cy");
  Trajectory traj;
  if (!j.contains("poses") || !j.at("poses").is_array()) throw IoError("trajectory: missing 'poses' array");
  for (const json& p : j.at("poses")) traj.poses.push_back(pose_from_json(p, intrinsics));
  if (j.contains("spacing")) {
    traj.spacing = required<std::vector<double>>(j, "spacing");
  } else {
    traj.update_spacing();
  }
  traj.validate();
  return traj;
}

void save_trajectory(const std::filesystem::path& file, const Trajectory& traj) {
  write_json_file(file, trajectory_to_json(traj));
}

Trajectory load_trajectory(const std::filesystem::path& file) { return trajectory_from_json(read_json_file(file)); }

json scene_to_json(const SceneSpec& scene) {
  json prims = json::array();
  for (const Primitive& p : scene.primitives) {
    if (p.kind == Primitive::Kind::rect) {
      prims.push_back({{"type", "rect"},
                       {"center", vec3_json(p.center)},
                       {"axis_u", vec3_json(p.axis_u)},
                       {"axis_v", vec3_json(p.axis_v)},
                       {"size", {p.size.x(), p.size.y()}},
                       {"texture", texture_json(p.texture)}});
    } else {
      prims.push_back({{"type", "box"},
                       {"min", vec3_json(p.box_min)},
                       {"max", vec3_json(p.box_max)},
                       {"texture", texture_json(p.texture)}});
    }
  }
  return {{"primitives", prims},
          {"background", rgb_json(scene.background)},
          {"depth_range", {scene.z_min_hint, scene.z_max_hint}}};
}

SceneSpec scene_from_json(const json& j, const std::filesystem::path& base_dir) {
  SceneSpec scene;
  if (!j.is_object() || !j.contains("primitives") || !j.at("primitives").is_array()) {
    throw IoError("scene: missing 'primitives' array");
  }
  for (const json& p : j.at("primitives")) {
    const auto type = required<std::string>(p, "type");
    const Texture tex = p.contains("texture") ? texture_from(p.at("texture"), base_dir) : Texture{};
    if (type == "rect") {
      const auto size = required<std::vector<double>>(p, "size");
      if (size.size() != 2) throw IoError("rect 'size' must have 2 numbers");
      scene.primitives.push_back(Primitive::rect(vec3(p, "center"), vec3(p, "axis_u"), vec3(p, "axis_v"), size[0],
                                                 size[1], tex));
    } else if (type == "box") {
      scene.primitives.push_back(Primitive::box(vec3(p, "min"), vec3(p, "max"), tex));
    } else {
      throw IoError("unknown primitive type '" + type + "'");
    }
  }
  if (j.contains("background")) scene.background = rgb(j, "background");
  if (j.contains("depth_range")) {
    const auto range = required<std::vector<double>>(j, "depth_range");
    if (range.size() != 2) throw IoError("'depth_range' must have 2 numbers");
    scene.z_min_hint = range[0];
    scene.z_max_hint = range[1];
  }
  scene.validate();
  return scene;
}

void save_scene(const std::filesystem::path& file, const SceneSpec& scene) {
  write_json_file(file, scene_to_json(scene));
}

SceneSpec load_scene(const std::filesystem::path& file) {
  return scene_from_json(read_json_file(file), file.parent_path());
}

json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed JSON in " + file.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& file, const json& j) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("short write to " + file.string());
}

}  // namespace lfcap::scene
