#include "io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "tat/error.hpp"

namespace tat::cli {

namespace {

fs::path with_ext(const fs::path& prefix, const std::string& ext) {
  fs::path p = prefix;
  const auto e = p.extension().string();
  if (e == ".json" || e == ".f64" || e == ".pgm" || e == ".mask") p.replace_extension();
  return fs::path(p.string() + ext);
}

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t out = 0;
  for (int b = 0; b < 8; ++b) out |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
  return out;
}

void write_f64(const std::vector<double>& v, const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("output", "cannot write " + path.string());
  std::vector<std::uint64_t> raw(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) raw[i] = to_little(std::bit_cast<std::uint64_t>(v[i]));
  os.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size() * 8));
}

std::vector<double> read_f64(const fs::path& path, std::size_t expected) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("input", "cannot read " + path.string());
  std::vector<std::uint64_t> raw(expected);
  is.read(reinterpret_cast<char*>(raw.data()), std::streamsize(expected * 8));
  if (std::size_t(is.gcount()) != expected * 8)
    throw ValidationError("input", path.string() + " holds fewer samples than its sidecar declares");
  std::vector<double> v(expected);
  for (std::size_t i = 0; i < expected; ++i) v[i] = std::bit_cast<double>(to_little(raw[i]));
  return v;
}

json point_json(const Point& p, int dim) {
  json a = json::array();
  for (int i = 0; i < dim; ++i) a.push_back(p[i]);
  return a;
}

Point point_from(const json& a) {
  Point p{};
  for (std::size_t i = 0; i < std::min<std::size_t>(3, a.size()); ++i) p[i] = a[i].get<double>();
  return p;
}

json detectors_json(const DetectorSet& d) {
  json j;
  j["geometry"] = to_string(d.geometry);
  j["dim"] = d.dim;
  j["radius"] = d.radius;
  j["arc_start"] = d.arc_start;
  j["arc_span"] = d.arc_span;
  json pos = json::array(), nrm = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    pos.push_back(point_json(d.positions[i], d.dim));
    nrm.push_back(point_json(d.normals[i], d.dim));
  }
  j["positions"] = pos;
  j["normals"] = nrm;
  j["weights"] = d.weights;
  j["angles"] = d.angles;
  return j;
}

DetectorSet detectors_from(const json& j) {
  DetectorSet d;
  d.geometry = geometry_from_string(j.at("geometry").get<std::string>());
  d.dim = j.at("dim").get<int>();
  d.radius = j.at("radius").get<double>();
  d.arc_start = j.value("arc_start", 0.0);
  d.arc_span = j.value("arc_span", 2.0 * kPi);
  for (const auto& p : j.at("positions")) d.positions.push_back(point_from(p));
  for (const auto& p : j.at("normals")) d.normals.push_back(point_from(p));
  d.weights = j.at("weights").get<std::vector<double>>();
  d.angles = j.value("angles", std::vector<double>{});
  if (d.normals.size() != d.size() || d.weights.size() != d.size())
    throw ValidationError("detectors", "positions, normals and weights differ in length");
  return d;
}

json read_sidecar(const fs::path& path, fs::path& prefix) {
  prefix = with_ext(path, "");
  return read_json(with_ext(path, ".json"));
}

}  // namespace

void write_json(const json& j, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw ValidationError("output", "cannot write " + path.string());
  os << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("input", "cannot read " + path.string());
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw ValidationError("input", path.string() + ": " + e.what());
  }
}

void write_pgm(const ImageGrid& image, const fs::path& path) {
  const auto& s = image.spec;
  const int nx = s.shape[0], ny = s.shape[1];
  const int k = s.dim == 3 ? s.shape[2] / 2 : 0;
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double v = image[s.flat(i, j, k)];
      if (first) lo = hi = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      first = false;
    }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("output", "cannot write " + path.string());
  os << "P5\n" << nx << ' ' << ny << "\n255\n";
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  // Top row of the picture is the largest y.
  for (int j = ny - 1; j >= 0; --j)
    for (int i = 0; i < nx; ++i) {
      const double v = (image[s.flat(i, j, k)] - lo) * scale;
      os.put(char(std::uint8_t(std::clamp(std::lround(v), 0L, 255L))));
    }
}

void write_image(const ImageGrid& image, const fs::path& prefix, const json& extra) {
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  const auto& s = image.spec;
  json j = extra;
  j["format"] = "tat-image";
  j["dim"] = s.dim;
  j["shape"] = std::vector<int>(s.shape.begin(), s.shape.begin() + s.dim);
  j["origin"] = point_json(s.origin, s.dim);
  j["spacing"] = s.spacing;
  j["data"] = with_ext(prefix, ".f64").filename().string();
  if (!image.valid.empty()) {
    j["mask"] = with_ext(prefix, ".mask").filename().string();
    std::ofstream os(with_ext(prefix, ".mask"), std::ios::binary);
    os.write(reinterpret_cast<const char*>(image.valid.data()), std::streamsize(image.valid.size()));
  }
  write_f64(image.values, with_ext(prefix, ".f64"));
  write_pgm(image, with_ext(prefix, ".pgm"));
  write_json(j, with_ext(prefix, ".json"));
}

ImageGrid read_image(const fs::path& path) {
  fs::path prefix;
  const json j = read_sidecar(path, prefix);
  if (j.value("format", "") != "tat-image") throw ValidationError("input", path.string() + " is not an image file");
  GridSpec s;
  s.dim = j.at("dim").get<int>();
  const auto shape = j.at("shape").get<std::vector<int>>();
  if (int(shape.size()) != s.dim) throw ValidationError("shape", "length must equal dim");
  for (int a = 0; a < s.dim; ++a) s.shape[a] = shape[a];
  s.origin = point_from(j.at("origin"));
  s.spacing = j.at("spacing").get<double>();
  s.validate();
  ImageGrid g(s);
  g.values = read_f64(prefix.parent_path() / j.at("data").get<std::string>(), s.size());
  if (j.contains("mask")) {
    std::ifstream is(prefix.parent_path() / j["mask"].get<std::string>(), std::ios::binary);
    g.valid.resize(s.size());
    is.read(reinterpret_cast<char*>(g.valid.data()), std::streamsize(s.size()));
    if (std::size_t(is.gcount()) != s.size()) throw ValidationError("mask", "mask file is truncated");
  }
  return g;
}

void write_projection(const ProjectionData& p, const fs::path& prefix, const json& extra) {
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  json j = extra;
  j["format"] = "tat-projection";
  j["kind"] = to_string(p.kind);
  j["t_max"] = p.time.t_max;
  j["samples"] = p.time.samples;
  j["detectors"] = detectors_json(p.detectors);
  j["data"] = with_ext(prefix, ".f64").filename().string();
  write_f64(p.values, with_ext(prefix, ".f64"));
  write_json(j, with_ext(prefix, ".json"));
}

void write_recording(const WaveRecording& r, const fs::path& prefix, const json& extra) {
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  json j = extra;
  j["format"] = "tat-projection";
  j["kind"] = "pressure";
  j["dt"] = r.dt;
  j["steps"] = r.steps;
  j["t_max"] = r.t_max();
  j["samples"] = r.samples();
  j["constant_unit_speed"] = r.constant_unit_speed;
  j["detectors"] = detectors_json(r.detectors);
  j["data"] = with_ext(prefix, ".f64").filename().string();
  write_f64(r.values, with_ext(prefix, ".f64"));
  write_json(j, with_ext(prefix, ".json"));
}

DataFile read_data(const fs::path& path) {
  fs::path prefix;
  DataFile out;
  out.sidecar = read_sidecar(path, prefix);
  const json& j = out.sidecar;
  if (j.value("format", "") != "tat-projection")
    throw ValidationError("input", path.string() + " is not a projection file");
  DetectorSet d = detectors_from(j.at("detectors"));
  const fs::path blob = prefix.parent_path() / j.at("data").get<std::string>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pressure") {
    WaveRecording r;
    r.detectors = std::move(d);
    r.dt = j.at("dt").get<double>();
    r.steps = j.at("steps").get<int>();
    r.constant_unit_speed = j.value("constant_unit_speed", true);
    r.values = read_f64(blob, r.detectors.size() * std::size_t(r.samples()));
    out.recording = std::move(r);
  } else {
    TimeGrid t{j.at("t_max").get<double>(), j.at("samples").get<int>()};
    t.validate();
    ProjectionData p(std::move(d), t, kind_from_string(kind));
    p.values = read_f64(blob, p.values.size());
    out.projection = std::move(p);
  }
  return out;
}

}  // namespace tat::cli
