#include "recon_common.hpp"

#include "tat/error.hpp"

namespace tat::detail {

Prepared prepare_round(const ProjectionData& g, const GridSpec& spec, int dim, const std::string& method) {
  spec.validate();
  if (g.dim() != dim)
    throw ValidationError("projection.dim", method + " needs " + std::to_string(dim) + "D data");
  if (spec.dim != dim) throw ValidationError("grid.dim", method + " needs a " + std::to_string(dim) + "D grid");
  const Geometry geo = g.detectors.geometry;
  const bool ok = dim == 3 ? geo == Geometry::Sphere : (geo == Geometry::Circle || geo == Geometry::Arc);
  if (!ok)
    throw ValidationError("detectors.geometry",
                          method + " needs " + (dim == 3 ? std::string("sphere") : std::string("circle or arc")) +
                              " detectors");
  if (g.time.samples < 4) throw ValidationError("time.samples", "need at least 4 samples");
  Prepared p;
  p.g = normalize_to_unit(g.kind == DataKind::Integral ? g : convert_kind(g, DataKind::Integral));
  p.unit_spec = spec;
  const double r = g.detectors.radius;
  p.unit_spec.origin = (1.0 / r) * spec.origin;
  p.unit_spec.spacing = spec.spacing / r;
  return p;
}

std::vector<std::uint8_t> stencil_inside(const GridSpec& s, int reach) {
  std::vector<std::uint8_t> ok(s.size(), 0);
  const double h = reach * s.spacing;
  std::size_t count = 0;
  for (std::size_t f = 0; f < s.size(); ++f) {
    const Point y = s.point(f);
    bool in = dot(y, y) < 1.0;
    for (int a = 0; a < s.dim && in; ++a)
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        Point q = y;
        q[a] += sgn * h;
        in = in && dot(q, q) < 1.0;
      }
    ok[f] = in;
    count += in;
  }
  if (count == 0) throw ValidationError("grid", "no sample lies strictly inside the detector surface");
  return ok;
}

std::vector<std::uint8_t> stencil_support(const GridSpec& inner, const std::vector<std::uint8_t>& valid, int pad) {
  const GridSpec outer = inner.padded(pad);
  std::vector<std::uint8_t> need(outer.size(), 0);
  for (std::size_t f = 0; f < inner.size(); ++f) {
    if (!valid[f]) continue;
    const auto ix = inner.index(f);
    int o[3] = {ix[0], ix[1], ix[2]};
    for (int a = 0; a < inner.dim; ++a) o[a] += pad;
    need[outer.flat(o[0], o[1], o[2])] = 1;
    for (int a = 0; a < inner.dim; ++a)
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        int q[3] = {o[0], o[1], o[2]};
        q[a] += sgn;
        need[outer.flat(q[0], q[1], q[2])] = 1;
      }
  }
  return need;
}

ImageGrid finish(const GridSpec& spec, std::vector<double> values, std::vector<std::uint8_t> valid) {
  ImageGrid out;
  out.spec = spec;
  for (std::size_t f = 0; f < values.size(); ++f)
    if (!valid[f]) values[f] = 0.0;
  out.values = std::move(values);
  out.valid = std::move(valid);
  return out;
}

std::vector<std::vector<std::size_t>> spatial_tiles(const GridSpec& spec, const std::vector<std::uint8_t>& at) {
  const int b = spec.dim == 3 ? 4 : 8;
  const int tx = (spec.shape[0] + b - 1) / b, ty = (spec.shape[1] + b - 1) / b;
  const int tz = spec.dim == 3 ? (spec.shape[2] + b - 1) / b : 1;
  std::vector<std::vector<std::size_t>> tiles(std::size_t(tx) * ty * tz);
  for (std::size_t f = 0; f < spec.size(); ++f) {
    if (!at[f]) continue;
    const auto idx = spec.index(f);
    tiles[(std::size_t(idx[2] / b) * ty + idx[1] / b) * tx + idx[0] / b].push_back(f);
  }
  std::erase_if(tiles, [](const auto& t) { return t.empty(); });
  return tiles;
}

}  // namespace tat::detail
