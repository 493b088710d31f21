#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "lfcap/lab/capture.hpp"
#include "lfcap/lab/policy.hpp"

namespace lfcap::lab {

/// Writes the selected views of a run for external reconstruction:
///   <dir>/manifest.json          policy, parameters, indices and poses
///   <dir>/frame_<k>/             one frame directory per selected view
/// Returns the manifest.
nlohmann::json export_run(const std::filesystem::path& dir, const PolicyRun& run, CaptureCache& cache);

}  // namespace lfcap::lab
