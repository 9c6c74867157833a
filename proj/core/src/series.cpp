#include "tat/series.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "tat/error.hpp"
#include "tat/parallel.hpp"
#include "tat/specfun.hpp"

namespace tat {

Box Box::centered_cube(int dim, double half_side) {
  Box b;
  b.dim = dim;
  for (int a = 0; a < dim; ++a) {
    b.lo[a] = -half_side;
    b.hi[a] = half_side;
  }
  return b;
}

double EigenBasis::value(std::size_t k, const Point& x) const {
  double v = 1.0;
  for (int a = 0; a < domain.dim; ++a) {
    const double l = domain.length(a);
    v *= std::sqrt(2.0 / l) * std::sin(modes[k].index[a] * kPi * (x[a] - domain.lo[a]) / l);
  }
  return v;
}

Point EigenBasis::gradient(std::size_t k, const Point& x) const {
  double s[3], c[3];
  for (int a = 0; a < domain.dim; ++a) {
    const double l = domain.length(a);
    const double w = modes[k].index[a] * kPi / l;
    const double ph = w * (x[a] - domain.lo[a]);
    s[a] = std::sqrt(2.0 / l) * std::sin(ph);
    c[a] = std::sqrt(2.0 / l) * w * std::cos(ph);
  }
  Point gr{};
  for (int a = 0; a < domain.dim; ++a) {
    double v = c[a];
    for (int b = 0; b < domain.dim; ++b)
      if (b != a) v *= s[b];
    gr[a] = v;
  }
  return gr;
}

double EigenBasis::normal_derivative(std::size_t k, const Point& x, const Point& n) const {
  return dot(gradient(k, x), n);
}

namespace {

EigenBasis enumerate(const Box& domain, double lambda_max, int limit) {
  if (domain.dim != 2 && domain.dim != 3) throw ValidationError("domain.dim", "must be 2 or 3");
  for (int a = 0; a < domain.dim; ++a)
    if (!(domain.length(a) > 0.0)) throw ValidationError("domain", "side lengths must be positive");
  int mmax[3] = {1, 1, 1};
  for (int a = 0; a < domain.dim; ++a) mmax[a] = std::max(1, int(std::floor(lambda_max * domain.length(a) / kPi)));
  EigenBasis basis;
  basis.domain = domain;
  for (int i = 1; i <= mmax[0]; ++i)
    for (int j = 1; j <= mmax[1]; ++j)
      for (int k = 1; k <= (domain.dim == 3 ? mmax[2] : 1); ++k) {
        double l2 = std::pow(i / domain.length(0), 2) + std::pow(j / domain.length(1), 2);
        if (domain.dim == 3) l2 += std::pow(k / domain.length(2), 2);
        const double lambda = kPi * std::sqrt(l2);
        if (lambda <= lambda_max * (1.0 + 1e-12)) basis.modes.push_back({{i, j, k}, lambda});
      }
  std::sort(basis.modes.begin(), basis.modes.end(), [](const EigenMode& a, const EigenMode& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.index < b.index;
  });
  if (limit > 0 && int(basis.modes.size()) > limit) basis.modes.resize(limit);
  return basis;
}

}  // namespace

EigenBasis rect_eigenbasis(const Box& domain, int K) {
  if (K < 1) throw ValidationError("K", "need at least one mode");
  // Every one of the K lowest modes has lambda below that of the mode with
  // all indices equal to ceil(K^(1/dim)).
  const int side = int(std::ceil(std::pow(double(K), 1.0 / domain.dim))) + 1;
  double l2 = 0.0;
  for (int a = 0; a < domain.dim; ++a) l2 += std::pow(side / domain.length(a), 2);
  return enumerate(domain, kPi * std::sqrt(l2), K);
}

EigenBasis rect_eigenbasis_upto(const Box& domain, double lambda_max) { return enumerate(domain, lambda_max, 0); }

std::vector<double> series_coefficients(const ProjectionData& g, const EigenBasis& basis) {
  const Box& box = basis.domain;
  const int dim = box.dim;
  if (g.dim() != dim) throw ValidationError("projection.dim", "does not match the domain dimension");
  const ProjectionData data = g.kind == DataKind::Integral ? g : convert_kind(g, DataKind::Integral);
  const auto& det = data.detectors;
  const double scale = std::max(box.length(0), box.length(1));
  const double tol = 1e-9 * scale;
  // Every detector sits on the boundary; every face carries positive weight.
  std::vector<double> face(2 * dim, 0.0);
  for (std::size_t i = 0; i < det.size(); ++i) {
    const Point& z = det.positions[i];
    bool on = false, outside = false;
    for (int a = 0; a < dim; ++a) {
      if (z[a] < box.lo[a] - tol || z[a] > box.hi[a] + tol) outside = true;
      if (std::abs(z[a] - box.lo[a]) <= tol) {
        on = true;
        face[2 * a] += det.weights[i];
      }
      if (std::abs(z[a] - box.hi[a]) <= tol) {
        on = true;
        face[2 * a + 1] += det.weights[i];
      }
    }
    if (!on || outside) throw ValidationError("detectors", "every detector must lie on the domain boundary");
  }
  for (double w : face)
    if (!(w > 0.0)) throw ValidationError("detectors", "a face of the domain has no detector coverage");

  // Distinct frequencies share one kernel row.
  std::map<double, int> slot;
  for (const auto& m : basis.modes) slot.emplace(m.lambda, 0);
  std::vector<double> lambdas;
  for (auto& [l, s] : slot) {
    s = int(lambdas.size());
    lambdas.push_back(l);
  }
  const int nt = data.time.samples;
  const double dt = data.time.step();
  const std::size_t nl = lambdas.size(), nd = det.size();
  Eigen::MatrixXd kernel(nl, nt);
  parallel_for(nl, [&](std::size_t l) {
    for (int j = 0; j < nt; ++j) {
      const double r = data.time.at(j);
      const double c = (j == 0 || j == nt - 1) ? 0.5 * dt : dt;
      double phi = 0.0;
      // g vanishes at r = 0 faster than Phi blows up.
      if (r > 0.0)
        phi = dim == 2 ? -0.25 * bessel_y0(lambdas[l] * r) : std::cos(lambdas[l] * r) / (4.0 * kPi * r);
      kernel(l, j) = c * phi;
    }
  });
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> G(
      data.values.data(), Eigen::Index(nd), nt);
  const Eigen::MatrixXd I = kernel * G.transpose();  // nl x nd

  std::vector<double> alpha(basis.size(), 0.0);
  parallel_for(basis.size(), [&](std::size_t k) {
    const int l = slot.at(basis.modes[k].lambda);
    double acc = 0.0;
    for (std::size_t i = 0; i < nd; ++i)
      acc += det.weights[i] * I(l, Eigen::Index(i)) * basis.normal_derivative(k, det.positions[i], det.normals[i]);
    alpha[k] = acc;
  });
  return alpha;
}

ImageGrid series_sum(std::span<const double> alpha, const EigenBasis& basis, const GridSpec& grid) {
  grid.validate();
  const Box& box = basis.domain;
  if (grid.dim != box.dim) throw ValidationError("grid.dim", "does not match the domain dimension");
  if (alpha.size() != basis.size()) throw ValidationError("alpha", "needs one coefficient per mode");
  const int dim = box.dim;
  int mmax[3] = {1, 1, 1};
  for (const auto& m : basis.modes)
    for (int a = 0; a < dim; ++a) mmax[a] = std::max(mmax[a], m.index[a]);
  // sine tables S_a(m, i) = sqrt(2/L) sin(m pi (x_i - lo)/L), zero outside the box.
  std::vector<Eigen::MatrixXd> table(3);
  for (int a = 0; a < 3; ++a) {
    if (a >= dim) {
      table[a] = Eigen::MatrixXd::Ones(1, 1);
      continue;
    }
    const double l = box.length(a);
    table[a].resize(mmax[a], grid.shape[a]);
    for (int i = 0; i < grid.shape[a]; ++i) {
      const double x = grid.origin[a] + i * grid.spacing;
      const bool inside = x >= box.lo[a] && x <= box.hi[a];
      for (int m = 1; m <= mmax[a]; ++m)
        table[a](m - 1, i) = inside ? std::sqrt(2.0 / l) * std::sin(m * kPi * (x - box.lo[a]) / l) : 0.0;
    }
  }
  ImageGrid out(grid);
  const int m3 = dim == 3 ? mmax[2] : 1;
  // Coefficient planes A_k(m1, m2), one per third index.
  std::vector<Eigen::MatrixXd> planes(m3, Eigen::MatrixXd::Zero(mmax[0], mmax[1]));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& ix = basis.modes[k].index;
    planes[dim == 3 ? ix[2] - 1 : 0](ix[0] - 1, ix[1] - 1) += alpha[k];
  }
  const int nz = grid.shape[2];
  for (int kz = 0; kz < nz; ++kz) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(mmax[0], mmax[1]);
    for (int p = 0; p < m3; ++p) a += (dim == 3 ? table[2](p, kz) : 1.0) * planes[p];
    // F(i, j) = sum S_x(m1, i) A(m1, m2) S_y(m2, j)
    const Eigen::MatrixXd f = table[0].transpose() * a * table[1];
    for (int j = 0; j < grid.shape[1]; ++j)
      for (int i = 0; i < grid.shape[0]; ++i) out.values[grid.flat(i, j, kz)] = f(i, j);
  }
  return out;
}

}  // namespace tat
