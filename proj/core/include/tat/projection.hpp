#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tat/detectors.hpp"

namespace tat {

/// INTEGRAL: integrals of f over circles/spheres of radius t.
/// MEAN: the same divided by the measure 2 pi t (2D) or 4 pi t^2 (3D).
enum class DataKind { Integral, Mean };

std::string to_string(DataKind k);
DataKind kind_from_string(const std::string& name);

/// Uniform samples t_j = j * t_max / (samples - 1), j = 0..samples-1.
struct TimeGrid {
  double t_max = 2.0;
  int samples = 64;

  double step() const { return t_max / (samples - 1); }
  double at(int j) const { return j * step(); }
  void validate() const;
};

/// Sampled g(z_i, t_j), stored detector-major.
struct ProjectionData {
  DetectorSet detectors;
  TimeGrid time;
  DataKind kind = DataKind::Integral;
  std::vector<double> values;

  ProjectionData() = default;
  ProjectionData(DetectorSet d, TimeGrid t, DataKind k);

  int dim() const { return detectors.dim; }
  double& at(std::size_t detector, int j) { return values[detector * time.samples + j]; }
  double at(std::size_t detector, int j) const { return values[detector * time.samples + j]; }
  std::span<double> row(std::size_t detector) {
    return {values.data() + detector * time.samples, std::size_t(time.samples)};
  }
  std::span<const double> row(std::size_t detector) const {
    return {values.data() + detector * time.samples, std::size_t(time.samples)};
  }
};

/// Measure of the integration circle/sphere of radius t: 2 pi t or 4 pi t^2.
double sphere_measure(int dim, double t);

/// Multiplies or divides by sphere_measure. The MEAN value at t = 0 is taken
/// from the nearest positive-t sample.
ProjectionData convert_kind(const ProjectionData& p, DataKind target);

/// Rescales data measured on a radius-R surface to the unit surface:
/// z -> z/R, t -> t/R, and INTEGRAL values by R^-(dim-1). MEAN values are
/// scale free.
ProjectionData normalize_to_unit(const ProjectionData& p);

}  // namespace tat
