#pragma once

#include <cstddef>
#include <vector>

#include "tat/image_grid.hpp"
#include "tat/projection.hpp"

namespace tat {

/// Sound speed v(x) > 0 sampled on a lattice; v = 1 outside the lattice.
struct SpeedField {
  ImageGrid grid;

  double min() const;
  double max() const;
  bool constant_one() const;
  /// Throws unless every sample is positive and the outermost ring equals 1.
  void validate() const;
};

SpeedField constant_speed(const GridSpec& spec);

/// v = 1 + amplitude * exp(1 - 1 / (1 - |x - c|^2 / radius^2)) inside the
/// ball, 1 outside.
SpeedField bump_speed(const GridSpec& spec, const Point& center, double radius, double amplitude);

/// Pressure samples p(z_i, n dt), n = 0..steps, stored detector-major.
struct WaveRecording {
  DetectorSet detectors;
  double dt = 0.0;
  int steps = 0;
  bool constant_unit_speed = true;
  std::vector<double> values;

  int samples() const { return steps + 1; }
  double t_max() const { return steps * dt; }
  double& at(std::size_t i, int n) { return values[i * std::size_t(samples()) + n]; }
  double at(std::size_t i, int n) const { return values[i * std::size_t(samples()) + n]; }
};

/// Leapfrog solver for p_tt = v^2 Lap p with p_t(., 0) = 0 on a padded
/// extension of the initial lattice with zero Dirichlet walls.
class WaveSolver {
 public:
  /// `cover_lo`/`cover_hi` bound the region that must lie `pad` inside the
  /// walls. `speed` may be null (v = 1) and otherwise shares the initial lattice.
  WaveSolver(const ImageGrid& initial, const SpeedField* speed, const Point& cover_lo, const Point& cover_hi,
             double pad, double dt);

  void step();
  int step_count() const { return steps_; }
  double time() const { return steps_ * dt_; }
  double dt() const { return dt_; }
  const GridSpec& spec() const { return spec_; }
  /// Current field, interpolated (linear) at x.
  double sample(const Point& x) const;
  const std::vector<double>& field() const { return cur_; }
  /// Leapfrog-conserved energy between the two latest time levels:
  /// h^d sum [ v^-2 ((p^{n+1} - p^n)/dt)^2 - p^n Lap_h p^{n+1} ].
  double energy() const;

 private:
  void laplacian(const std::vector<double>& p, std::vector<double>& out) const;

  GridSpec spec_;
  double dt_;
  int steps_ = 0;
  std::vector<double> c2_;  // v^2 dt^2 / h^2
  std::vector<double> inv_v2_;
  std::vector<double> prev_, cur_, work_;
};

/// Runs the solver to time T and records the pressure at the detectors.
/// dt <= 0 selects 0.5 h / (v_max sqrt(dim)); the step is then shrunk so
/// that T is a whole number of steps. Throws on a CFL violation.
WaveRecording wave_forward(const ImageGrid& initial, const SpeedField* speed, const DetectorSet& detectors, double T,
                           double dt = 0.0);

/// 3D, v = 1: t Rf(z, t) = int_0^t p(z, s) ds by cumulative trapezoid.
ProjectionData means_from_pressure(const WaveRecording& rec);

/// Inverse of means_from_pressure: p = d/dt (t Rf) by central differences.
WaveRecording pressure_from_means(const ProjectionData& means);

}  // namespace tat
