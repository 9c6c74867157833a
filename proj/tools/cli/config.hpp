#pragma once

#include <string>

#include "json.hpp"
#include "tat/detectors.hpp"
#include "tat/image_grid.hpp"
#include "tat/phantom.hpp"
#include "tat/projection.hpp"
#include "tat/series.hpp"
#include "tat/wave.hpp"

namespace tat::cli {

using json = nlohmann::json;

/// Every key the tool understands, with its default. Null means "derived from
/// other keys" (see the builders below).
json default_config();

/// Defaults overlaid with the file at `path` (JSON merge patch); empty path
/// keeps the defaults.
json load_config(const std::string& path);

/// Sets the key at JSON pointer `pointer`. Text that parses as JSON (numbers,
/// booleans, arrays, null) is stored parsed, anything else as a string.
void set_key(json& cfg, const std::string& pointer, const std::string& text);

/// Phantom from `phantom.balls` / `phantom.bumps`, or the named preset when
/// both lists are empty. Presets are given for a unit detector surface.
Phantom phantom_from(const json& cfg);

/// Detector count default: 2 grid.m for circles, arcs and squares, grid.m
/// rings for spheres, grid.m cells per edge for boxes.
DetectorSet detectors_from(const json& cfg, int dim);

/// t_max defaults to the diameter of the detector surface, samples to grid.m.
TimeGrid time_from(const json& cfg, const DetectorSet& detectors);

/// Cell-centred grid.m^dim over [grid.lo, grid.hi]^dim, default [-R, R].
GridSpec grid_from(const json& cfg, int dim, double radius);

/// Speed field from `speed` on the given lattice.
SpeedField speed_from(const json& cfg, const GridSpec& lattice);

/// Centered square with half side `detectors.radius`.
Box varspeed_domain(const json& cfg);

int varspeed_modes(const json& cfg, int m);

}  // namespace tat::cli
