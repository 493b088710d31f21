#include "lfcap/scene/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/scale.hpp"

namespace lfcap {

void RgbdFrame::validate() const {
  camera.validate();
  require_channels(rgb, 3, "frame rgb");
  require_channels(depth, 1, "frame depth");
  if (rgb.width() != camera.width || rgb.height() != camera.height) {
    throw DimensionError("frame: rgb resolution does not match camera");
  }
  require_same_size(rgb, depth, "frame depth");
  for (float d : depth.data()) {
    if (!(d >= 0.0F) || !std::isfinite(d)) throw InvariantError("frame: depth values must be finite and >= 0");
  }
}

}  // namespace lfcap

namespace lfcap::scene {

namespace {

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
  return {static_cast<float>(a[0] + (b[0] - a[0]) * t), static_cast<float>(a[1] + (b[1] - a[1]) * t),
          static_cast<float>(a[2] + (b[2] - a[2]) * t)};
}

// Face-local hit on a rectangle spanned by unit axes u, v.
std::optional<Hit> hit_rect(const Eigen::Vector3d& corner, const Eigen::Vector3d& u, const Eigen::Vector3d& v,
                            double w, double h, const Texture& tex, const Eigen::Vector3d& origin,
                            const Eigen::Vector3d& dir) {
  const Eigen::Vector3d n = u.cross(v);
  const double denom = n.dot(dir);
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const double t = n.dot(corner - origin) / denom;
  if (!(t > 0.0)) return std::nullopt;
  const Eigen::Vector3d p = origin + t * dir - corner;
  const double a = p.dot(u);
  const double b = p.dot(v);
  if (a < 0.0 || a > w || b < 0.0 || b > h) return std::nullopt;
  return Hit{t, tex.sample(a, b, w, h)};
}

}  // namespace

Texture Texture::solid(Rgb c) {
  Texture t;
  t.kind = Kind::solid;
  t.a = t.b = c;
  return t;
}

Texture Texture::checker(Rgb a, Rgb b, double cell) {
  Texture t;
  t.kind = Kind::checker;
  t.a = a;
  t.b = b;
  t.cell = cell;
  return t;
}

Texture Texture::gradient(Rgb from, Rgb to, int axis) {
  Texture t;
  t.kind = Kind::gradient;
  t.a = from;
  t.b = to;
  t.axis = axis;
  return t;
}

Rgb Texture::sample(double u, double v, double w, double h) const {
  switch (kind) {
    case Kind::solid:
      return a;
    case Kind::checker: {
      // Smooth checker: a product of sines pushed towards the two colors.
      const double s = std::sin(M_PI * u / cell) * std::sin(M_PI * v / cell);
      return lerp(a, b, std::clamp(0.5 + 1.5 * s, 0.0, 1.0));
    }
    case Kind::gradient: {
      const double t = axis == 0 ? u / w : v / h;
      return lerp(a, b, std::clamp(t, 0.0, 1.0));
    }
    case Kind::image: {
      if (!image) return a;
      const double x = std::clamp(u / w, 0.0, 1.0) * (image->width() - 1);
      const double y = std::clamp(v / h, 0.0, 1.0) * (image->height() - 1);
      const int x0 = static_cast<int>(std::floor(x));
      const int y0 = static_cast<int>(std::floor(y));
      const int x1 = std::min(x0 + 1, image->width() - 1);
      const int y1 = std::min(y0 + 1, image->height() - 1);
      const double ax = x - x0;
      const double ay = y - y0;
      Rgb out{};
      for (int c = 0; c < 3; ++c) {
        out[c] = static_cast<float>((1 - ax) * (1 - ay) * image->at(c, x0, y0) + ax * (1 - ay) * image->at(c, x1, y0) +
                                    (1 - ax) * ay * image->at(c, x0, y1) + ax * ay * image->at(c, x1, y1));
      }
      return out;
    }
  }
  return a;
}

Primitive Primitive::rect(const Eigen::Vector3d& center, const Eigen::Vector3d& axis_u,
                          const Eigen::Vector3d& axis_v, double width, double height, Texture texture) {
  Primitive p;
  p.kind = Kind::rect;
  p.center = center;
  p.axis_u = axis_u.normalized();
  p.axis_v = axis_v.normalized();
  p.size = {width, height};
  p.texture = std::move(texture);
  return p;
}

Primitive Primitive::box(const Eigen::Vector3d& min, const Eigen::Vector3d& max, Texture texture) {
  Primitive p;
  p.kind = Kind::box;
  p.box_min = min;
  p.box_max = max;
  p.center = 0.5 * (min + max);
  p.texture = std::move(texture);
  return p;
}

std::optional<Hit> intersect(const Primitive& prim, const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) {
  if (prim.kind == Primitive::Kind::rect) {
    const Eigen::Vector3d corner = prim.center - 0.5 * prim.size.x() * prim.axis_u - 0.5 * prim.size.y() * prim.axis_v;
    return hit_rect(corner, prim.axis_u, prim.axis_v, prim.size.x(), prim.size.y(), prim.texture, origin, dir);
  }
  // Box: test the six faces and keep the nearest.
  std::optional<Hit> best;
  const Eigen::Vector3d& lo = prim.box_min;
  const Eigen::Vector3d& hi = prim.box_max;
  const Eigen::Vector3d ext = hi - lo;
  for (int axis = 0; axis < 3; ++axis) {
    const int ua = (axis + 1) % 3;
    const int va = (axis + 2) % 3;
    const Eigen::Vector3d u = Eigen::Vector3d::Unit(ua);
    const Eigen::Vector3d v = Eigen::Vector3d::Unit(va);
    for (int side = 0; side < 2; ++side) {
      Eigen::Vector3d corner = lo;
      corner[axis] = side == 0 ? lo[axis] : hi[axis];
      const auto hit = hit_rect(corner, u, v, ext[ua], ext[va], prim.texture, origin, dir);
      if (hit && (!best || hit->t < best->t)) best = hit;
    }
  }
  return best;
}

void SceneSpec::validate() const {
  if (primitives.empty()) throw InvariantError("scene: at least one primitive required");
  for (const Primitive& p : primitives) {
    if (p.kind == Primitive::Kind::rect) {
      if (!(p.size.x() > 0.0 && p.size.y() > 0.0)) throw InvariantError("scene: rectangle sizes must be > 0");
      if (!p.axis_u.allFinite() || !p.axis_v.allFinite() || std::abs(p.axis_u.norm() - 1.0) > 1e-9 ||
          std::abs(p.axis_v.norm() - 1.0) > 1e-9) {
        throw InvariantError("scene: rectangle axes must be non-zero");
      }
      if (std::abs(p.axis_u.dot(p.axis_v)) > 1e-9) throw InvariantError("scene: rectangle axes must be orthogonal");
    } else if (!((p.box_max - p.box_min).minCoeff() > 0.0)) {
      throw InvariantError("scene: box sizes must be > 0");
    }
    if (p.texture.kind == Texture::Kind::checker && !(p.texture.cell > 0.0)) {
      throw InvariantError("scene: checker cell must be > 0");
    }
  }
  if (!(z_min_hint > 0.0 && z_max_hint > z_min_hint)) throw InvariantError("scene: depth range hint must be 0 < min < max");
}

RgbdFrame render_scene(const SceneSpec& scene, const CameraModel& camera) {
  scene.validate();
  camera.validate();
  RgbdFrame frame{Image(camera.width, camera.height, 3), Image(camera.width, camera.height, 1), camera};
  for (int y = 0; y < camera.height; ++y) {
    for (int x = 0; x < camera.width; ++x) {
      const Eigen::Vector3d dir = camera.ray(x, y);
      std::optional<Hit> best;
      for (const Primitive& p : scene.primitives) {
        const auto hit = intersect(p, camera.center, dir);
        if (hit && (!best || hit->t < best->t)) best = hit;
      }
      const Rgb c = best ? best->color : scene.background;
      for (int ch = 0; ch < 3; ++ch) frame.rgb.at(ch, x, y) = c[ch];
      frame.depth.at(0, x, y) = best ? static_cast<float>(best->t) : mpi::kDepthSentinel;
    }
  }
  return frame;
}

void Trajectory::validate() const {
  if (poses.empty()) throw InvariantError("trajectory: at least one pose required");
  for (const CameraModel& cam : poses) {
    cam.validate();
    if (!cam.same_intrinsics(poses.front())) throw InvariantError("trajectory: poses must share intrinsics");
  }
  if (spacing.size() + 1 != poses.size()) throw InvariantError("trajectory: spacing must have size() - 1 entries");
}

std::vector<double> Trajectory::arc_length() const {
  std::vector<double> out(poses.size(), 0.0);
  for (std::size_t i = 1; i < poses.size(); ++i) {
    out[i] = out[i - 1] + (poses[i].center - poses[i - 1].center).norm();
  }
  return out;
}

void Trajectory::update_spacing() {
  spacing.clear();
  for (std::size_t i = 1; i < poses.size(); ++i) spacing.push_back((poses[i].center - poses[i - 1].center).norm());
}

Trajectory Trajectory::linear(const CameraModel& start, const Eigen::Vector3d& end_center, std::size_t n) {
  if (n == 0) throw ArgumentError("trajectory: need at least one pose");
  Trajectory traj;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    traj.poses.push_back(start.with_center((1.0 - t) * start.center + t * end_center));
  }
  traj.update_spacing();
  return traj;
}

CameraModel default_camera(int width, int height, double fov_x) { return CameraModel::from_fov(width, height, fov_x); }

namespace {

using V = Eigen::Vector3d;

Primitive wall(double z, double width, double height, Texture tex) {
  return Primitive::rect(V(0.0, 0.0, z), V::UnitX(), V::UnitY(), width, height, std::move(tex));
}

}  // namespace

SceneSpec preset_scene(const std::string& name) {
  SceneSpec s;
  s.background = {0.0F, 0.0F, 0.0F};
  if (name == "plane") {
    s.primitives.push_back(wall(2.0, 8.0, 12.0, Texture::checker({0.9F, 0.8F, 0.2F}, {0.1F, 0.2F, 0.6F}, 0.25)));
    s.z_min_hint = 1.5;
    s.z_max_hint = 2.5;
  } else if (name == "office") {
    // Far wall on the left of the capture path, desk clutter from 0.5 m to
    // 1.6 m on its right.
    s.primitives.push_back(wall(3.0, 10.0, 14.0, Texture::checker({0.75F, 0.72F, 0.65F}, {0.35F, 0.4F, 0.5F}, 0.07)));
    s.primitives.push_back(Primitive::box(V(0.55, -0.3, 1.2), V(1.1, 0.5, 1.6),
                                          Texture::checker({0.8F, 0.3F, 0.1F}, {0.2F, 0.6F, 0.2F}, 0.12)));
    s.primitives.push_back(Primitive::box(V(0.45, 0.1, 0.5), V(0.62, 0.6, 0.65),
                                          Texture::checker({0.95F, 0.9F, 0.1F}, {0.1F, 0.1F, 0.5F}, 0.05)));
    s.primitives.push_back(Primitive::box(V(0.72, -0.5, 0.8), V(0.9, -0.1, 0.95),
                                          Texture::checker({0.1F, 0.7F, 0.9F}, {0.9F, 0.1F, 0.5F}, 0.06)));
  } else if (name == "shelf") {
    s.primitives.push_back(wall(3.0, 10.0, 14.0, Texture::checker({0.2F, 0.2F, 0.7F}, {0.9F, 0.7F, 0.3F}, 0.07)));
    for (int i = 0; i < 4; ++i) {
      const double y = -0.6 + 0.35 * i;
      s.primitives.push_back(Primitive::box(V(0.5, y, 0.7), V(1.3, y + 0.04, 1.0),
                                            Texture::checker({0.9F, 0.9F, 0.9F}, {0.5F, 0.3F, 0.1F}, 0.05)));
      s.primitives.push_back(Primitive::box(V(0.55 + 0.17 * i, y - 0.2, 0.75), V(0.65 + 0.17 * i, y, 0.85),
                                            Texture::checker({0.9F, 0.2F, 0.2F}, {0.1F, 0.1F, 0.1F}, 0.04)));
    }
  } else if (name == "pillars") {
    s.primitives.push_back(wall(3.0, 10.0, 14.0, Texture::checker({0.8F, 0.8F, 0.85F}, {0.3F, 0.3F, 0.35F}, 0.07)));
    const double depths[] = {0.5, 0.9, 1.4, 2.2};
    const double xs[] = {0.45, 0.6, 0.8, 1.1};
    const Rgb colors[] = {{0.9F, 0.3F, 0.3F}, {0.3F, 0.9F, 0.3F}, {0.3F, 0.3F, 0.9F}, {0.9F, 0.8F, 0.2F}};
    for (int i = 0; i < 4; ++i) {
      s.primitives.push_back(Primitive::box(V(xs[i] - 0.05, -1.5, depths[i]), V(xs[i] + 0.05, 1.5, depths[i] + 0.1),
                                            Texture::checker(colors[i], {0.05F, 0.05F, 0.05F}, 0.05)));
    }
  } else if (name == "clutter") {
    // Depth edges spread evenly along the capture path.
    s.primitives.push_back(wall(3.0, 10.0, 14.0, Texture::checker({0.9F, 0.9F, 0.9F}, {0.2F, 0.2F, 0.2F}, 0.2)));
    const double depths[] = {0.6, 1.0, 1.5, 0.8, 1.2};
    for (int i = 0; i < 5; ++i) {
      const double x = -0.3 + 0.2 * i;
      s.primitives.push_back(Primitive::box(V(x - 0.04, -1.5, depths[i]), V(x + 0.04, 1.5, depths[i] + 0.1),
                                            Texture::checker({0.3F, 0.6F, 0.9F}, {0.05F, 0.05F, 0.05F}, 0.05)));
    }
  } else {
    throw ArgumentError("unknown preset scene: " + name);
  }
  return s;
}

std::vector<std::string> preset_names() { return {"plane", "office", "shelf", "pillars", "clutter"}; }

}  // namespace lfcap::scene
