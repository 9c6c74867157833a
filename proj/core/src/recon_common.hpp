#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tat/image_grid.hpp"
#include "tat/projection.hpp"

namespace tat::detail {

/// Round-surface data rescaled to the unit surface, INTEGRAL kind, plus the
/// output grid expressed in the same units.
struct Prepared {
  ProjectionData g;
  GridSpec unit_spec;
};

Prepared prepare_round(const ProjectionData& g, const GridSpec& spec, int dim, const std::string& method);

/// Flags samples whose axis stencil (the point and its 2*dim neighbours at
/// distance `reach` cells) lies strictly inside the unit ball.
std::vector<std::uint8_t> stencil_inside(const GridSpec& unit_spec, int reach);

/// Flags samples of `outer` (= inner padded by `pad`) that are a valid inner
/// sample or an axis neighbour of one.
std::vector<std::uint8_t> stencil_support(const GridSpec& inner, const std::vector<std::uint8_t>& valid, int pad);

/// Result grid on the caller's spec with invalid samples zeroed.
ImageGrid finish(const GridSpec& spec, std::vector<double> values, std::vector<std::uint8_t> valid);

}  // namespace tat::detail

#include <algorithm>
#include <cmath>

#include "tat/interp.hpp"
#include "tat/parallel.hpp"

namespace tat::detail {

/// Detector positions and per-component weights in structure-of-arrays form
/// with the filtered rows, for the backprojection inner loop.
template <int C>
struct BackprojectionSet {
  std::vector<double> x, y, z;
  std::vector<double> coef[C];
  const double* rows = nullptr;
  int samples = 0;
  double dt = 1.0;
};

/// Flagged samples grouped into spatial tiles (4^3 in 3D, 8^2 in 2D) so that
/// one detector row serves a whole tile from cache.
std::vector<std::vector<std::size_t>> spatial_tiles(const GridSpec& spec, const std::vector<std::uint8_t>& at);

/// out_c(p) = sum_i coef_c[i] * kernel(d_i) * row_i(d_i), d_i = |p - z_i|,
/// at every flagged sample of `spec`. Rows vanish beyond their last sample.
/// Each sum runs over i in ascending order, independent of tiling and threads.
template <int C, class Kernel>
void backproject(const BackprojectionSet<C>& s, const GridSpec& spec, const std::vector<std::uint8_t>& at,
                 TInterp mode, Kernel kernel, std::vector<double>* out) {
  for (int c = 0; c < C; ++c) out[c].assign(spec.size(), 0.0);
  const std::size_t nd = s.x.size();
  const double inv_dt = 1.0 / s.dt;
  const int last = s.samples - 1;
  const auto tiles = spatial_tiles(spec, at);
  parallel_for(tiles.size(), [&](std::size_t t) {
    const auto& tile = tiles[t];
    const std::size_t np = tile.size();
    std::vector<double> px(np), py(np), pz(np), v(np);
    std::vector<double> acc[C];
    for (int c = 0; c < C; ++c) acc[c].assign(np, 0.0);
    for (std::size_t q = 0; q < np; ++q) {
      const Point p = spec.point(tile[q]);
      px[q] = p[0];
      py[q] = p[1];
      pz[q] = p[2];
    }
    for (std::size_t i = 0; i < nd; ++i) {
      const double* row = s.rows + i * std::size_t(s.samples);
      const double zx = s.x[i], zy = s.y[i], zz = s.z[i];
      if (mode == TInterp::Linear) {
        // u == last picks row[last]; u beyond it contributes nothing.
        for (std::size_t q = 0; q < np; ++q) {
          const double dx = zx - px[q], dy = zy - py[q], dz = zz - pz[q];
          const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
          const double u = d * inv_dt;
          const int j = std::min(int(u), last - 1);
          const double lo = row[j], hi = row[j + 1];
          v[q] = u <= last ? (lo + (u - j) * (hi - lo)) * kernel(d) : 0.0;
        }
      } else {
        for (std::size_t q = 0; q < np; ++q) {
          const double dx = zx - px[q], dy = zy - py[q], dz = zz - pz[q];
          const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
          v[q] = interp_uniform({row, std::size_t(s.samples)}, s.dt, d, mode) * kernel(d);
        }
      }
      for (int c = 0; c < C; ++c) {
        const double w = s.coef[c][i];
        double* out_c = acc[c].data();
        for (std::size_t q = 0; q < np; ++q) out_c[q] += w * v[q];
      }
    }
    for (int c = 0; c < C; ++c)
      for (std::size_t q = 0; q < np; ++q) out[c][tile[q]] = acc[c][q];
  });
}

/// Scalar weights w_i (C = 1) or w_i * n_i (C = dim) for a detector set.
template <int C>
BackprojectionSet<C> make_set(const DetectorSet& d, const double* rows, int samples, double dt) {
  BackprojectionSet<C> s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    s.x.push_back(d.positions[i][0]);
    s.y.push_back(d.positions[i][1]);
    s.z.push_back(d.positions[i][2]);
    for (int c = 0; c < C; ++c) s.coef[c].push_back(C == 1 ? d.weights[i] : d.weights[i] * d.normals[i][c]);
  }
  s.rows = rows;
  s.samples = samples;
  s.dt = dt;
  return s;
}

}  // namespace tat::detail
