#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "tat/image_grid.hpp"
#include "tat/projection.hpp"
#include "tat/wave.hpp"

namespace tat::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Every artifact is a JSON sidecar `<prefix>.json` next to a raw blob
// `<prefix>.f64` of little-endian doubles. Paths given to readers may name the
// prefix, the sidecar or the blob.

/// Writes `<prefix>.json`, `<prefix>.f64`, `<prefix>.pgm` and, for grids with
/// validity flags, `<prefix>.mask` (one byte per sample).
void write_image(const ImageGrid& image, const fs::path& prefix, const json& extra = json::object());
ImageGrid read_image(const fs::path& path);

/// Detectors are stored explicitly so that files round-trip bit-exactly.
void write_projection(const ProjectionData& p, const fs::path& prefix, const json& extra = json::object());
void write_recording(const WaveRecording& r, const fs::path& prefix, const json& extra = json::object());

/// Either projection data (integral or mean kind) or a pressure recording.
struct DataFile {
  json sidecar;
  std::optional<ProjectionData> projection;
  std::optional<WaveRecording> recording;
};
DataFile read_data(const fs::path& path);

/// 8-bit binary PGM with min-max windowing; 3D grids show the central z slice.
void write_pgm(const ImageGrid& image, const fs::path& path);

void write_json(const json& j, const fs::path& path);
json read_json(const fs::path& path);

}  // namespace tat::cli
