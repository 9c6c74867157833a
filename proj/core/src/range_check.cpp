#include "tat/range_check.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "tat/error.hpp"
#include "tat/parallel.hpp"
#include "tat/specfun.hpp"

namespace tat {

namespace {

ProjectionData unit_means(const ProjectionData& g) {
  if (g.dim() != 2 || g.detectors.geometry != Geometry::Circle)
    throw ValidationError("detectors.geometry", "range checks need a full circle of detectors");
  const ProjectionData mean = g.kind == DataKind::Mean ? g : convert_kind(g, DataKind::Mean);
  return normalize_to_unit(mean);
}

double trapezoid_weight(int j, int n, double dt) { return (j == 0 || j == n - 1) ? 0.5 * dt : dt; }

// int g(theta_i, t) J_0(lambda t) t dt for every detector.
std::vector<double> hankel_rows(const ProjectionData& g, double lambda) {
  const int n = g.time.samples;
  const double dt = g.time.step();
  std::vector<double> kernel(n);
  for (int j = 0; j < n; ++j) {
    const double t = g.time.at(j);
    kernel[j] = trapezoid_weight(j, n, dt) * bessel_j(0, lambda * t) * t;
  }
  std::vector<double> out(g.detectors.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto row = g.row(i);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += kernel[j] * row[j];
    out[i] = acc;
  }
  return out;
}

std::complex<double> angular_coefficient(const std::vector<double>& v, const std::vector<double>& angles, int m) {
  std::complex<double> c = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) c += v[i] * std::polar(1.0, -m * angles[i]);
  return c / double(v.size());
}

}  // namespace

std::vector<double> check_moments(const ProjectionData& g_in, int k_max) {
  if (k_max < 0) throw ValidationError("k_max", "must be nonnegative");
  const ProjectionData g = unit_means(g_in);
  const int nd = int(g.detectors.size());
  if (nd < 2 * (2 * k_max) + 1)
    throw ValidationError("detectors.count", "need at least 4 k_max + 1 detectors");
  const int n = g.time.samples;
  const double dt = g.time.step();
  std::vector<double> residual(k_max + 1, 0.0);
  parallel_for(std::size_t(k_max + 1), [&](std::size_t k) {
    std::vector<double> moment(nd, 0.0);
    for (int i = 0; i < nd; ++i) {
      const auto row = g.row(i);
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += trapezoid_weight(j, n, dt) * std::pow(g.time.at(j), 2.0 * k + 1.0) * row[j];
      moment[i] = acc;
    }
    double total = 0.0, high = 0.0;
    for (int m = -(nd - 1) / 2; m <= nd / 2; ++m) {
      const double e = std::norm(angular_coefficient(moment, g.detectors.angles, m));
      total += e;
      if (std::abs(m) > int(2 * k)) high += e;
    }
    residual[k] = total > 0.0 ? high / total : 0.0;
  });
  return residual;
}

std::vector<DiskEigen> disk_eigenpairs(int m_max, int zeros) {
  std::vector<DiskEigen> out;
  for (int m = 0; m <= m_max; ++m)
    for (double z : bessel_zeros(m, zeros).zeros) out.push_back({m, z});
  std::sort(out.begin(), out.end(), [](const DiskEigen& a, const DiskEigen& b) { return a.lambda < b.lambda; });
  return out;
}

std::vector<double> check_orthogonality(const ProjectionData& g_in, std::span<const DiskEigen> pairs) {
  const ProjectionData g = unit_means(g_in);
  const int n = g.time.samples;
  const double dt = g.time.step();
  std::vector<double> residual(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [m, lambda] = pairs[p];
    const double dpsi = lambda * bessel_jp(m, lambda);
    std::vector<double> kernel(n);
    for (int j = 0; j < n; ++j) kernel[j] = trapezoid_weight(j, n, dt) * bessel_j(0, lambda * g.time.at(j)) * g.time.at(j);
    std::complex<double> sum = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < g.detectors.size(); ++i) {
      const auto row = g.row(i);
      const double w = g.detectors.weights[i] * std::abs(dpsi);
      const auto phase = std::polar(1.0, m * g.detectors.angles[i]);
      double acc = 0.0, mag = 0.0;
      for (int j = 0; j < n; ++j) {
        acc += kernel[j] * row[j];
        mag += std::abs(kernel[j] * row[j]);
      }
      sum += g.detectors.weights[i] * dpsi * acc * phase;
      scale += w * mag;
    }
    residual[p] = scale > 0.0 ? std::abs(sum) / scale : 0.0;
  });
  return residual;
}

std::vector<std::vector<double>> check_bessel_zeros(const ProjectionData& g_in, int m_max, int zeros) {
  if (m_max < 0 || zeros < 1) throw ValidationError("zeros", "need m_max >= 0 and at least one zero");
  const ProjectionData g = unit_means(g_in);
  if (int(g.detectors.size()) < 2 * m_max + 1)
    throw ValidationError("detectors.count", "need at least 2 m_max + 1 detectors");
  std::vector<BesselZeroTable> tables;
  double top = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    tables.push_back(bessel_zeros(m, zeros));
    top = std::max(top, tables.back().zeros.back());
  }
  // Hankel-type transform on the lambda grid, shared by all orders.
  const double dl = 0.05;
  const int nl = int(std::ceil(top / dl)) + 1;
  std::vector<std::vector<double>> grid(nl);
  parallel_for(std::size_t(nl), [&](std::size_t l) { grid[l] = hankel_rows(g, l * dl); });
  std::vector<std::vector<double>> residual(m_max + 1, std::vector<double>(zeros, 0.0));
  double global = 0.0;
  std::vector<double> peak(m_max + 1, 0.0);
  for (int m = 0; m <= m_max; ++m)
    for (int l = 0; l < nl; ++l) {
      const double a = std::abs(angular_coefficient(grid[l], g.detectors.angles, m));
      peak[m] = std::max(peak[m], a);
      global = std::max(global, a);
    }
  for (int m = 0; m <= m_max; ++m) {
    // A harmonic absent from the data has nothing to test.
    if (peak[m] <= 1e-12 * global || peak[m] == 0.0) continue;
    for (int j = 0; j < zeros; ++j) {
      const auto rows = hankel_rows(g, tables[m].zeros[j]);
      residual[m][j] = std::abs(angular_coefficient(rows, g.detectors.angles, m)) / peak[m];
    }
  }
  return residual;
}

RangeReport validate_range(const ProjectionData& g, int k_max, int m_max, int zeros, const RangeThresholds& th) {
  RangeReport r;
  r.moments = check_moments(g, k_max);
  const auto pairs = disk_eigenpairs(m_max, zeros);
  r.orthogonality = check_orthogonality(g, pairs);
  r.bessel = check_bessel_zeros(g, m_max, zeros);
  for (double v : r.moments) r.max_moments = std::max(r.max_moments, v);
  for (double v : r.orthogonality) r.max_orthogonality = std::max(r.max_orthogonality, v);
  for (const auto& row : r.bessel)
    for (double v : row) r.max_bessel = std::max(r.max_bessel, v);
  r.passed = r.max_moments < th.moments && r.max_orthogonality < th.orthogonality && r.max_bessel < th.bessel;
  return r;
}

}  // namespace tat
