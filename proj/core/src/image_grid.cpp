#include "tat/image_grid.hpp"

#include <cmath>
#include <string>

#include "tat/error.hpp"
#include "tat/parallel.hpp"
#include "tat/phantom.hpp"

namespace tat {

GridSpec GridSpec::cell_centered(int dim, double lo, double hi, int m) {
  GridSpec g;
  g.dim = dim;
  g.spacing = (hi - lo) / m;
  for (int a = 0; a < 3; ++a) {
    g.shape[a] = a < dim ? m : 1;
    g.origin[a] = a < dim ? lo + 0.5 * g.spacing : 0.0;
  }
  g.validate();
  return g;
}

GridSpec GridSpec::node_aligned(int dim, double lo, double hi, int m) {
  GridSpec g;
  g.dim = dim;
  g.spacing = (hi - lo) / m;
  for (int a = 0; a < 3; ++a) {
    g.shape[a] = a < dim ? m + 1 : 1;
    g.origin[a] = a < dim ? lo : 0.0;
  }
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (dim != 2 && dim != 3) throw ValidationError("grid.dim", "must be 2 or 3");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ValidationError("grid.spacing", "must be positive");
  for (int a = 0; a < 3; ++a) {
    if (a < dim && shape[a] < 2) throw ValidationError("grid.shape", "need at least 2 samples per axis");
    if (a >= dim && shape[a] != 1) throw ValidationError("grid.shape", "unused axes must have extent 1");
  }
}

std::array<int, 3> GridSpec::index(std::size_t f) const {
  const int i = int(f % shape[0]);
  f /= shape[0];
  const int j = int(f % shape[1]);
  return {i, j, int(f / shape[1])};
}

Point GridSpec::point(int i, int j, int k) const {
  return {origin[0] + spacing * i, origin[1] + spacing * j, dim == 3 ? origin[2] + spacing * k : 0.0};
}

Point GridSpec::point(std::size_t f) const {
  const auto ijk = index(f);
  return point(ijk[0], ijk[1], ijk[2]);
}

GridSpec GridSpec::padded(int cells) const {
  GridSpec g = *this;
  for (int a = 0; a < dim; ++a) {
    g.shape[a] += 2 * cells;
    g.origin[a] -= cells * spacing;
  }
  return g;
}

std::size_t GridSpec::stride(int axis) const {
  if (axis == 0) return 1;
  if (axis == 1) return std::size_t(shape[0]);
  return std::size_t(shape[0]) * shape[1];
}

ImageGrid::ImageGrid(const GridSpec& s, double fill) : spec(s), values(s.size(), fill) { spec.validate(); }

double ImageGrid::sample(const Point& x) const {
  double frac[3] = {0, 0, 0};
  int base[3] = {0, 0, 0};
  for (int a = 0; a < spec.dim; ++a) {
    const double u = (x[a] - spec.origin[a]) / spec.spacing;
    if (!(u >= 0.0) || u > spec.shape[a] - 1) return 0.0;
    int b = int(u);
    if (b >= spec.shape[a] - 1) b = spec.shape[a] - 2;
    base[a] = b;
    frac[a] = u - b;
  }
  const std::size_t s1 = spec.stride(1);
  if (spec.dim == 2) {
    const std::size_t f = spec.flat(base[0], base[1]);
    const double fx = frac[0], fy = frac[1];
    return (1 - fy) * ((1 - fx) * values[f] + fx * values[f + 1]) +
           fy * ((1 - fx) * values[f + s1] + fx * values[f + s1 + 1]);
  }
  const std::size_t s2 = spec.stride(2);
  const std::size_t f = spec.flat(base[0], base[1], base[2]);
  const double fx = frac[0], fy = frac[1], fz = frac[2];
  auto plane = [&](std::size_t o) {
    return (1 - fy) * ((1 - fx) * values[o] + fx * values[o + 1]) +
           fy * ((1 - fx) * values[o + s1] + fx * values[o + s1 + 1]);
  };
  return (1 - fz) * plane(f) + fz * plane(f + s2);
}

ImageGrid rasterize(const Phantom& phantom, const GridSpec& spec) {
  if (phantom.dim() != spec.dim) throw ValidationError("grid.dim", "does not match phantom dimension");
  ImageGrid out(spec);
  parallel_for(spec.size(), [&](std::size_t f) { out.values[f] = phantom(spec.point(f)); });
  return out;
}

double relative_l2(const ImageGrid& a, const ImageGrid& b, std::span<const std::uint8_t> mask) {
  if (a.values.size() != b.values.size() || a.spec.shape != b.spec.shape)
    throw ValidationError("grid", "relative_l2 needs grids with identical shapes");
  if (!mask.empty() && mask.size() != a.values.size()) throw ValidationError("mask", "size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (!a.is_valid(i) || !b.is_valid(i)) continue;
    if (!mask.empty() && !mask[i]) continue;
    const double d = a.values[i] - b.values[i];
    num += d * d;
    den += b.values[i] * b.values[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

std::vector<std::uint8_t> ball_mask(const GridSpec& spec, double radius, const Point& center) {
  std::vector<std::uint8_t> m(spec.size());
  for (std::size_t f = 0; f < m.size(); ++f) m[f] = distance(spec.point(f), center) < radius;
  return m;
}

std::vector<std::uint8_t> box_mask(const GridSpec& spec, const Point& lo, const Point& hi) {
  std::vector<std::uint8_t> m(spec.size());
  for (std::size_t f = 0; f < m.size(); ++f) {
    const Point x = spec.point(f);
    bool in = true;
    for (int a = 0; a < spec.dim; ++a) in = in && x[a] >= lo[a] && x[a] <= hi[a];
    m[f] = in;
  }
  return m;
}

}  // namespace tat
