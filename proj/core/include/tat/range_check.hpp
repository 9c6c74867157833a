#pragma once

#include <span>
#include <vector>

#include "tat/projection.hpp"

namespace tat {

// Range conditions for circular means on the unit disk. Data of either kind on
// a full circle of any radius is accepted and rescaled to MEAN kind on the
// unit circle; any other detector set is refused.

/// Energy fraction of the angular harmonics |m| > 2k of
/// M_k(theta) = int r^{2k+1} g(theta, r) dr, for k = 0..k_max.
std::vector<double> check_moments(const ProjectionData& g, int k_max);

/// Dirichlet eigenpair of the unit disk: J_m(lambda) = 0.
struct DiskEigen {
  int m = 0;
  double lambda = 0.0;
};

/// Orders 0..m_max, first `zeros` zeros each, ascending in lambda.
std::vector<DiskEigen> disk_eigenpairs(int m_max, int zeros);

/// |sum_i w_i int g(theta_i, t) lambda J_m'(lambda) e^{i m theta_i} J_0(lambda t) t dt|
/// divided by the same sum over absolute values of the integrand.
std::vector<double> check_orthogonality(const ProjectionData& g, std::span<const DiskEigen> pairs);

/// residual[m][j] = |G_m(lambda_{m,j})| / max_lambda |G_m(lambda)| with
/// G_m(lambda) the m-th angular Fourier coefficient of int g J_0(lambda t) t dt
/// and lambda_{m,j} the zeros of J_m. The maximum runs over a grid of spacing
/// 0.05 up to the largest zero tested.
std::vector<std::vector<double>> check_bessel_zeros(const ProjectionData& g, int m_max, int zeros);

struct RangeThresholds {
  double moments = 1e-3;
  double orthogonality = 1e-3;
  double bessel = 1e-2;
};

struct RangeReport {
  std::vector<double> moments;
  std::vector<double> orthogonality;
  std::vector<std::vector<double>> bessel;
  double max_moments = 0.0, max_orthogonality = 0.0, max_bessel = 0.0;
  bool passed = false;
};

RangeReport validate_range(const ProjectionData& g, int k_max, int m_max, int zeros,
                           const RangeThresholds& thresholds = {});

}  // namespace tat
