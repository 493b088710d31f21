#include "lfcap/lab/export.hpp"

#include <string>

#include "lfcap/errors.hpp"
#include "lfcap/scene/formats.hpp"

namespace lfcap::lab {

nlohmann::json export_run(const std::filesystem::path& dir, const PolicyRun& run, CaptureCache& cache) {
  run.validate(cache.trajectory().size());
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  nlohmann::json manifest = run_to_json(run);
  nlohmann::json frames = nlohmann::json::array();
  for (std::size_t k = 0; k < run.indices.size(); ++k) {
    const std::string name = "frame_" + std::to_string(k);
    const auto view = cache.get(run.indices[k]);
    scene::save_frame(dir / name, view->frame);
    nlohmann::json entry = scene::pose_to_json(view->frame.camera);
    entry["index"] = run.indices[k];
    entry["dir"] = name;
    frames.push_back(std::move(entry));
  }
  manifest["frames"] = std::move(frames);
  manifest["intrinsics"] = scene::camera_to_json(cache.trajectory().poses.front());
  scene::write_json_file(dir / "manifest.json", manifest);
  return manifest;
}

}  // namespace lfcap::lab
