#include "config.hpp"

#include <cmath>
#include <fstream>

#include "tat/error.hpp"
#include "tat/varspeed.hpp"

namespace tat::cli {

namespace {

Point point_from(const json& a) {
  Point p{};
  if (!a.is_array()) throw ValidationError("phantom", "points are arrays of coordinates");
  for (std::size_t i = 0; i < std::min<std::size_t>(3, a.size()); ++i) p[i] = a[i].get<double>();
  return p;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) && !j[key].is_null() ? j[key].get<T>() : fallback;
}

void add_preset(Phantom& ph, const std::string& name) {
  if (name == "disk") {
    ph.add_ball({{0, 0, 0}, 0.5, 1.0});
  } else if (name == "offset-disk") {
    ph.add_ball({{0.3, 0.1, 0}, 0.4, 1.0});
  } else if (name == "two-disks") {
    ph.add_ball({{0.3, 0.1, 0}, 0.4, 1.0});
    ph.add_ball({{-0.3, -0.35, 0}, 0.25, 0.5});
  } else if (name == "smooth") {
    ph.add_smooth_bump({0.2, 0.1, 0}, 0.45, 1.0, 200);
    ph.add_smooth_bump({-0.35, -0.3, 0}, 0.3, 0.7, 200);
  } else if (name == "counterexample") {
    ph.add_ball({{0, 0, 0}, 3.0, 1.0});
  } else if (name == "exterior") {
    ph.add_ball({{0.1, 0.1, 0}, 0.4, 1.0});
    ph.add_ball({{1.3, 0, 0}, 0.15, 2.0});
    ph.add_ball({{-0.9, 1.25, 0}, 0.2, 2.0});
  } else if (name == "partial") {
    ph.add_ball({{0, -0.6, 0}, 0.2, 1.0});
    ph.add_ball({{-0.45, -0.35, 0}, 0.15, 1.0});
    ph.add_ball({{0.3, 0.3, 0}, 0.2, 1.0});
  } else {
    throw ValidationError("phantom.preset", "unknown preset '" + name + "'");
  }
}

}  // namespace

json default_config() {
  return json::parse(R"({
    "threads": 0,
    "strict": false,
    "phantom": {"dim": 2, "preset": "disk", "balls": [], "bumps": []},
    "grid": {"m": 128, "lo": null, "hi": null},
    "detectors": {"geometry": null, "radius": 1.0, "count": null, "arc_span": 6.283185307179586, "arc_start": 0.0},
    "time": {"t_max": null, "samples": null},
    "kind": "integral",
    "model": "analytic",
    "oversample": 4.0,
    "noise": {"level": 0.0, "seed": 1},
    "speed": {"type": "constant", "center": [0.1, -0.1], "radius": 0.6, "amplitude": 0.2},
    "method": null,
    "interp": "linear",
    "series": {"K": 0},
    "varspeed": {"m": 64, "K": 0, "variant": "A", "periods": 4.0, "operator_form": false},
    "range": {"k_max": 5, "m_max": 4, "zeros": 3,
              "thresholds": {"moments": 1e-3, "orthogonality": 1e-3, "bessel": 1e-2}},
    "compare": {"mask_radius": null},
    "experiment": {"m": null}
  })");
}

json load_config(const std::string& path) {
  json cfg = default_config();
  if (path.empty()) return cfg;
  std::ifstream is(path);
  if (!is) throw ValidationError("config", "cannot read " + path);
  json user;
  try {
    user = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", e.what());
  }
  if (!user.is_object()) throw ValidationError("config", "must be a JSON object");
  cfg.merge_patch(user);
  return cfg;
}

void set_key(json& cfg, const std::string& pointer, const std::string& text) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  cfg[json::json_pointer(pointer)] = value;
}

Phantom phantom_from(const json& cfg) {
  const json& p = cfg.at("phantom");
  const int dim = p.at("dim").get<int>();
  if (dim != 2 && dim != 3) throw ValidationError("phantom.dim", "must be 2 or 3");
  Phantom ph(dim);
  const json balls = p.value("balls", json::array());
  const json bumps = p.value("bumps", json::array());
  for (const auto& b : balls)
    ph.add_ball({point_from(b.at("center")), b.at("radius").get<double>(), b.value("value", 1.0)});
  for (const auto& b : bumps)
    ph.add_smooth_bump(point_from(b.at("center")), b.at("radius").get<double>(), b.value("amplitude", 1.0),
                       b.value("shells", 100));
  if (balls.empty() && bumps.empty()) add_preset(ph, p.value("preset", "disk"));
  return ph;
}

DetectorSet detectors_from(const json& cfg, int dim) {
  const json& d = cfg.at("detectors");
  const int m = cfg.at("grid").at("m").get<int>();
  const Geometry geo = d.at("geometry").is_null() ? (dim == 3 ? Geometry::Sphere : Geometry::Circle)
                                                  : geometry_from_string(d["geometry"].get<std::string>());
  if (geometry_dim(geo) != dim)
    throw ValidationError("detectors.geometry", to_string(geo) + " detectors do not match a " + std::to_string(dim) +
                                                    "D phantom");
  int fallback = 2 * m;
  if (geo == Geometry::Sphere || geo == Geometry::Box) fallback = m;
  const int count = get_or<int>(d, "count", fallback);
  return make_detectors(geo, d.at("radius").get<double>(), count, d.at("arc_span").get<double>(),
                        d.at("arc_start").get<double>());
}

TimeGrid time_from(const json& cfg, const DetectorSet& det) {
  const json& t = cfg.at("time");
  TimeGrid g{get_or<double>(t, "t_max", det.diameter()), get_or<int>(t, "samples", cfg.at("grid").at("m").get<int>())};
  g.validate();
  return g;
}

GridSpec grid_from(const json& cfg, int dim, double radius) {
  const json& g = cfg.at("grid");
  const int m = g.at("m").get<int>();
  if (m < 2) throw ValidationError("grid.m", "need at least 2 cells per axis");
  const double lo = get_or<double>(g, "lo", -radius);
  const double hi = get_or<double>(g, "hi", radius);
  if (!(hi > lo)) throw ValidationError("grid.hi", "must exceed grid.lo");
  return GridSpec::cell_centered(dim, lo, hi, m);
}

SpeedField speed_from(const json& cfg, const GridSpec& lattice) {
  const json& s = cfg.at("speed");
  const std::string type = s.at("type").get<std::string>();
  if (type == "constant") return constant_speed(lattice);
  if (type == "bump")
    return bump_speed(lattice, point_from(s.at("center")), s.at("radius").get<double>(),
                      s.at("amplitude").get<double>());
  throw ValidationError("speed.type", "must be 'constant' or 'bump'");
}

Box varspeed_domain(const json& cfg) { return Box::centered_cube(2, cfg.at("detectors").at("radius").get<double>()); }

int varspeed_modes(const json& cfg, int m) {
  const int k = cfg.at("varspeed").at("K").get<int>();
  return k > 0 ? k : std::max(1, (m - 1) * (m - 1) / 10);
}

}  // namespace tat::cli
