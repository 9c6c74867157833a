#pragma once

#include <array>
#include <span>
#include <vector>

#include "tat/image_grid.hpp"
#include "tat/projection.hpp"

namespace tat {

/// Axis-aligned rectangle (2D) or box (3D) [lo, hi].
struct Box {
  int dim = 2;
  Point lo{};
  Point hi{};

  double length(int axis) const { return hi[axis] - lo[axis]; }
  static Box centered_cube(int dim, double half_side);
};

/// Dirichlet eigenfunction u = prod_i sqrt(2/L_i) sin(m_i pi (x_i - lo_i) / L_i)
/// with lambda^2 = pi^2 sum_i (m_i / L_i)^2, normalized in L2(box).
struct EigenMode {
  std::array<int, 3> index{1, 1, 1};
  double lambda = 0.0;
};

struct EigenBasis {
  Box domain;
  std::vector<EigenMode> modes;  // ascending lambda

  std::size_t size() const { return modes.size(); }
  double value(std::size_t k, const Point& x) const;
  Point gradient(std::size_t k, const Point& x) const;
  /// Normal derivative grad u_k . n at a boundary point.
  double normal_derivative(std::size_t k, const Point& x, const Point& n) const;
};

/// The K lowest modes (ties ordered by index).
EigenBasis rect_eigenbasis(const Box& domain, int K);

/// All modes with lambda <= lambda_max.
EigenBasis rect_eigenbasis_upto(const Box& domain, double lambda_max);

/// alpha_k = sum_i w_i I(z_i, lambda_k) du_k/dn(z_i) with
/// I(z, lambda) = int_0^{t_max} g(z, r) Phi_lambda(r) dr (trapezoid), where
/// Phi = -Y0(lambda r)/4 in 2D and cos(lambda r)/(4 pi r) in 3D.
/// Detectors must lie on the boundary of the domain and cover every face.
std::vector<double> series_coefficients(const ProjectionData& g, const EigenBasis& basis);

/// sum_k alpha_k u_k on the grid.
ImageGrid series_sum(std::span<const double> alpha, const EigenBasis& basis, const GridSpec& grid);

}  // namespace tat
