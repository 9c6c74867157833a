#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "io.hpp"
#include "tat/image_grid.hpp"

namespace tat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitWarning = 3;

/// Result of one command. Warnings mark numerical-quality problems that
/// --strict turns into exit code 3.
struct Outcome {
  json report = json::object();
  std::vector<std::string> warnings;
};

Outcome cmd_phantom(const json& cfg, const fs::path& out);
/// `in` optionally names an image used instead of the configured phantom by
/// the quadrature and wave models.
Outcome cmd_forward(const json& cfg, const fs::path& in, const fs::path& out);
Outcome cmd_recon(const json& cfg, const fs::path& in, const fs::path& out);
Outcome cmd_validate(const json& cfg, const fs::path& in);
Outcome cmd_compare(const json& cfg, const fs::path& a, const fs::path& b);

/// Dispatches on `method`; appends quality warnings and method facts to the
/// outcome.
ImageGrid reconstruct(const json& cfg, const DataFile& data, const std::string& method, Outcome& outcome);

/// Norms of a - b: absolute and relative L2 and Linf, over all samples valid
/// in both grids and over the interior (|x| < mask_radius when given).
json compare_images(const ImageGrid& a, const ImageGrid& b, double mask_radius);

/// Parses the command line, runs the command and prints its JSON report.
/// Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tat::cli
