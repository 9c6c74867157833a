#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tat/point.hpp"

namespace tat {

class Phantom;

/// Regular isotropic sample lattice. Sample (i, j, k) sits at
/// origin + h * (i, j, k); unused axes have extent 1.
struct GridSpec {
  int dim = 2;
  std::array<int, 3> shape{1, 1, 1};
  Point origin{};
  double spacing = 1.0;

  /// m cells per axis covering [lo, hi]^dim, samples at cell centers.
  static GridSpec cell_centered(int dim, double lo, double hi, int m);
  /// m + 1 samples per axis at the nodes of [lo, hi]^dim.
  static GridSpec node_aligned(int dim, double lo, double hi, int m);

  std::size_t size() const { return std::size_t(shape[0]) * shape[1] * shape[2]; }
  std::size_t flat(int i, int j, int k = 0) const {
    return (std::size_t(k) * shape[1] + j) * shape[0] + i;
  }
  std::array<int, 3> index(std::size_t flat) const;
  Point point(int i, int j, int k = 0) const;
  Point point(std::size_t flat) const;
  /// Same lattice extended by `cells` samples on every side of each used axis.
  GridSpec padded(int cells) const;
  std::size_t stride(int axis) const;

  /// Throws ValidationError unless h > 0, dim in {2,3} and shape >= 2 on used axes.
  void validate() const;
};

/// Scalar field on a GridSpec. `valid` is either empty (every sample is
/// meaningful) or holds one flag per sample; invalid samples store 0.
struct ImageGrid {
  GridSpec spec;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  ImageGrid() = default;
  explicit ImageGrid(const GridSpec& s, double fill = 0.0);

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  bool is_valid(std::size_t i) const { return valid.empty() || valid[i] != 0; }

  /// Linear (bilinear / trilinear) interpolation; 0 outside the lattice.
  double sample(const Point& x) const;
};

/// Each sample holds the phantom value at its position (the cell center for
/// cell_centered grids).
ImageGrid rasterize(const Phantom& phantom, const GridSpec& spec);

/// ||a - b|| / ||b|| in the discrete L2 sense, over samples valid in both
/// grids and, when `mask` is non-empty, flagged in `mask`. The grids must share
/// a GridSpec.
double relative_l2(const ImageGrid& a, const ImageGrid& b, std::span<const std::uint8_t> mask = {});

/// Flags samples with |x - center| < radius.
std::vector<std::uint8_t> ball_mask(const GridSpec& spec, double radius, const Point& center = {});

/// Flags samples inside the axis-aligned box [lo, hi] (used axes only).
std::vector<std::uint8_t> box_mask(const GridSpec& spec, const Point& lo, const Point& hi);

}  // namespace tat
