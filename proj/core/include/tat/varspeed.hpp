#pragma once

#include <memory>
#include <span>
#include <vector>

#include "tat/image_grid.hpp"
#include "tat/series.hpp"
#include "tat/wave.hpp"

namespace tat {

/// Discretization of A = -v^2 Lap on a square with zero Dirichlet data:
/// 5-point Laplacian on the (m+1)^2 node lattice, generalized eigenpairs
/// (-Lap_h) psi = lambda^2 v^-2 psi normalized by sum h^2 v^-2 psi^2 = 1.
struct DiscreteOperatorA {
  Box domain;
  int m = 0;
  double h = 0.0;
  GridSpec nodes;              // node-aligned lattice over the domain
  std::vector<double> speed;   // v at every node
  std::vector<double> lambda2; // ascending, one per mode
  /// psi_k at every node (boundary nodes hold 0), mode-major.
  std::vector<double> psi;
  /// d psi_k / dn at the boundary detectors, mode-major. The trace is
  /// -psi(inner neighbour)/h on edges and 0 at corners, the form for which
  /// discrete Green identities hold exactly.
  std::vector<double> trace;
  DetectorSet boundary;        // 4m nodes counterclockwise from the lower-left corner
  int krylov_dim = 0;

  int modes() const { return int(lambda2.size()); }
  std::span<const double> mode(int k) const { return {psi.data() + std::size_t(k) * nodes.size(), nodes.size()}; }
  std::span<const double> mode_trace(int k) const {
    return {trace.data() + std::size_t(k) * boundary.size(), boundary.size()};
  }

  /// Shared factorization state for harmonic extension.
  struct Impl;
  std::shared_ptr<const Impl> impl;
};

/// `speed` may be null (v = 1); otherwise it must live on the node lattice of
/// the domain with m cells per side.
DiscreteOperatorA build_operator(const Box& square, const SpeedField* speed, int m, int K);

/// Node-aligned lattice with m cells per side over the square.
GridSpec operator_lattice(const Box& square, int m);

/// g_k(t_j) = sum_b w_b g(b, t_j) dpsi_k/dn(b), mode-major K x samples.
struct ModalSeries {
  int modes = 0;
  int samples = 0;
  double dt = 0.0;
  std::vector<double> values;

  double at(int k, int j) const { return values[std::size_t(k) * samples + j]; }
  std::span<const double> row(int k) const { return {values.data() + std::size_t(k) * samples, std::size_t(samples)}; }
};

ModalSeries boundary_moments(const WaveRecording& g, const DiscreteOperatorA& op);

enum class CoefVariant { A, B, C };

struct VarspeedCoefficients {
  std::vector<double> f;
  /// max over modes of max|g_k| on the last 5% of samples, relative to the
  /// largest |g_k| over all modes and times.
  double tail_ratio = 0.0;
  bool decay_warning = false;  // tail_ratio > 1%
};

/// A: -l^-2 g(0) + l^-3 int sin(l t) g'' dt
/// B: -l^-2 g(0) - l^-2 int cos(l t) g' dt
/// C: -l^-1 int sin(l t) g dt
/// Derivatives by central differences, integrals by the trapezoid rule on [0, T].
VarspeedCoefficients coefficients_varspeed(const ModalSeries& g, const DiscreteOperatorA& op, CoefVariant variant);

/// sum_k f_k psi_k, sampled on `grid` by bilinear interpolation (exact on the
/// operator lattice).
ImageGrid recon_varspeed_series(std::span<const double> f, const DiscreteOperatorA& op, const GridSpec& grid);

struct OperatorFormResult {
  ImageGrid image;
  double tail_ratio = 0.0;
  bool decay_warning = false;
};

/// f = E g(0) - int_0^T sum_k psi_k sin(tau l_k)/l_k <E g_tt(tau), psi_k> dtau,
/// E the discrete harmonic extension of boundary data.
OperatorFormResult recon_operator_form(const WaveRecording& g, const DiscreteOperatorA& op, const GridSpec& grid);

/// Discrete harmonic extension of boundary values (ordered as op.boundary).
std::vector<double> harmonic_extension(std::span<const double> boundary_values, const DiscreteOperatorA& op);

}  // namespace tat
