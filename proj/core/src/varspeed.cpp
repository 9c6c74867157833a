#include "tat/varspeed.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "eigensolver.hpp"
#include "tat/error.hpp"
#include "tat/interp.hpp"
#include "tat/parallel.hpp"

namespace tat {

struct DiscreteOperatorA::Impl {
  int n_int = 0;
  std::vector<int> interior_node;  // interior index -> lattice flat index
  std::vector<int> boundary_inner; // boundary detector -> interior index of its inner neighbour, -1 at corners
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> laplace;  // -Lap_h on interior nodes
  Eigen::MatrixXd psi_int;         // n_int x K
};

GridSpec operator_lattice(const Box& square, int m) {
  if (square.dim != 2) throw ValidationError("domain.dim", "the variable-speed domain is a 2D square");
  if (std::abs(square.length(0) - square.length(1)) > 1e-12 * square.length(0))
    throw ValidationError("domain", "must be a square");
  if (m < 4) throw ValidationError("m", "need at least 4 cells per side");
  GridSpec s;
  s.dim = 2;
  s.shape = {m + 1, m + 1, 1};
  s.origin = square.lo;
  s.spacing = square.length(0) / m;
  return s;
}

DiscreteOperatorA build_operator(const Box& square, const SpeedField* speed, int m, int K) {
  DiscreteOperatorA op;
  op.domain = square;
  op.m = m;
  op.nodes = operator_lattice(square, m);
  op.h = op.nodes.spacing;
  const int ni = m - 1;
  const int n = ni * ni;
  if (K < 1 || K > n) throw ValidationError("K", "must lie in [1, (m-1)^2]");
  op.speed.assign(op.nodes.size(), 1.0);
  if (speed) {
    const auto& s = speed->grid.spec;
    if (s.shape != op.nodes.shape || std::abs(s.spacing - op.h) > 1e-12 * op.h ||
        distance(s.origin, op.nodes.origin) > 1e-12 * op.h)
      throw ValidationError("speed.grid", "must be the node lattice of the domain");
    if (!(speed->min() > 0.0)) throw ValidationError("speed", "must be positive");
    op.speed = speed->grid.values;
  }
  auto impl = std::make_shared<DiscreteOperatorA::Impl>();
  impl->n_int = n;
  auto id = [ni](int i, int j) { return (j - 1) * ni + (i - 1); };
  for (int j = 1; j <= ni; ++j)
    for (int i = 1; i <= ni; ++i) impl->interior_node.push_back(int(op.nodes.flat(i, j)));

  const double inv_h2 = 1.0 / (op.h * op.h);
  std::vector<Eigen::Triplet<double>> lt, ct;
  for (int j = 1; j <= ni; ++j)
    for (int i = 1; i <= ni; ++i) {
      const int r = id(i, j);
      const double vr = op.speed[op.nodes.flat(i, j)];
      lt.emplace_back(r, r, 4.0 * inv_h2);
      ct.emplace_back(r, r, 4.0 * inv_h2 * vr * vr);
      const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& q : nb) {
        if (q[0] < 1 || q[0] > ni || q[1] < 1 || q[1] > ni) continue;
        const int c = id(q[0], q[1]);
        lt.emplace_back(r, c, -inv_h2);
        ct.emplace_back(r, c, -inv_h2 * vr * op.speed[op.nodes.flat(q[0], q[1])]);
      }
    }
  Eigen::SparseMatrix<double> l(n, n), c(n, n);
  l.setFromTriplets(lt.begin(), lt.end());
  c.setFromTriplets(ct.begin(), ct.end());
  impl->laplace.compute(l);
  if (impl->laplace.info() != Eigen::Success) throw std::runtime_error("build_operator: Laplacian factorization failed");

  // C = V L V with V = diag(v) = D^-1/2; psi = V phi / h.
  const auto pairs = detail::lowest_eigenpairs(c, K);
  op.krylov_dim = pairs.krylov_dim;
  op.lambda2.assign(pairs.values.data(), pairs.values.data() + K);
  impl->psi_int.resize(n, K);
  op.psi.assign(std::size_t(K) * op.nodes.size(), 0.0);
  for (int k = 0; k < K; ++k) {
    // Fix the sign so that results do not depend on solver internals.
    Eigen::Index arg;
    pairs.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    const double sgn = pairs.vectors(arg, k) < 0.0 ? -1.0 : 1.0;
    for (int r = 0; r < n; ++r) {
      const int node = impl->interior_node[r];
      const double v = sgn * op.speed[node] * pairs.vectors(r, k) / op.h;
      impl->psi_int(r, k) = v;
      op.psi[std::size_t(k) * op.nodes.size() + node] = v;
    }
  }

  // Boundary detectors at the lattice nodes.
  const double a = 0.5 * square.length(0);
  const Point center = 0.5 * (square.lo + square.hi);
  op.boundary = make_detectors(Geometry::Square, a, m);
  for (auto& p : op.boundary.positions) p = p + center;
  for (const auto& p : op.boundary.positions) {
    const int i = int(std::lround((p[0] - square.lo[0]) / op.h));
    const int j = int(std::lround((p[1] - square.lo[1]) / op.h));
    int inner = -1;
    const bool corner = (i == 0 || i == m) && (j == 0 || j == m);
    if (!corner) {
      if (j == 0) inner = id(i, 1);
      else if (j == m) inner = id(i, m - 1);
      else if (i == 0) inner = id(1, j);
      else inner = id(m - 1, j);
    }
    impl->boundary_inner.push_back(inner);
  }
  const std::size_t nb = op.boundary.size();
  op.trace.assign(std::size_t(K) * nb, 0.0);
  for (int k = 0; k < K; ++k)
    for (std::size_t b = 0; b < nb; ++b)
      if (impl->boundary_inner[b] >= 0) op.trace[k * nb + b] = -impl->psi_int(impl->boundary_inner[b], k) / op.h;
  op.impl = impl;
  return op;
}

namespace {

void check_recording(const WaveRecording& g, const DiscreteOperatorA& op) {
  if (g.detectors.size() != op.boundary.size())
    throw ValidationError("recording.detectors", "must be the boundary nodes of the operator lattice");
  for (std::size_t b = 0; b < op.boundary.size(); ++b)
    if (distance(g.detectors.positions[b], op.boundary.positions[b]) > 1e-9 * op.h)
      throw ValidationError("recording.detectors", "must be the boundary nodes of the operator lattice");
  if (g.samples() < 4) throw ValidationError("recording.steps", "need at least 4 time samples");
}

// Tail check shared by the coefficient and operator paths.
double tail_ratio(const ModalSeries& g) {
  const int tail = std::max(1, int(std::ceil(0.05 * g.samples)));
  double peak = 0.0, worst = 0.0;
  for (double v : g.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  for (int k = 0; k < g.modes; ++k)
    for (int j = g.samples - tail; j < g.samples; ++j) worst = std::max(worst, std::abs(g.at(k, j)));
  return worst / peak;
}

double trapezoid(std::span<const double> y, double dt) {
  double s = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) s += (j == 0 || j + 1 == y.size() ? 0.5 : 1.0) * y[j];
  return s * dt;
}

ImageGrid render(const std::vector<double>& lattice_values, const DiscreteOperatorA& op, const GridSpec& grid) {
  ImageGrid on_lattice(op.nodes);
  on_lattice.values = lattice_values;
  const bool same = grid.shape == op.nodes.shape && std::abs(grid.spacing - op.h) <= 1e-12 * op.h &&
                    distance(grid.origin, op.nodes.origin) <= 1e-12 * op.h;
  if (same) return on_lattice;
  grid.validate();
  ImageGrid out(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) out.values[f] = on_lattice.sample(grid.point(f));
  return out;
}

}  // namespace

ModalSeries boundary_moments(const WaveRecording& g, const DiscreteOperatorA& op) {
  check_recording(g, op);
  ModalSeries out;
  out.modes = op.modes();
  out.samples = g.samples();
  out.dt = g.dt;
  const std::size_t nb = op.boundary.size();
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> data(
      g.values.data(), Eigen::Index(nb), out.samples);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> wt(out.modes, Eigen::Index(nb));
  for (int k = 0; k < out.modes; ++k)
    for (std::size_t b = 0; b < nb; ++b) wt(k, Eigen::Index(b)) = op.boundary.weights[b] * op.trace[k * nb + b];
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> gk = wt * data;
  out.values.assign(gk.data(), gk.data() + gk.size());
  return out;
}

VarspeedCoefficients coefficients_varspeed(const ModalSeries& g, const DiscreteOperatorA& op, CoefVariant variant) {
  if (g.modes != op.modes()) throw ValidationError("moments", "mode count does not match the operator");
  if (g.samples < 4) throw ValidationError("moments.samples", "need at least 4 time samples");
  VarspeedCoefficients out;
  out.f.assign(g.modes, 0.0);
  out.tail_ratio = tail_ratio(g);
  out.decay_warning = out.tail_ratio > 0.01;
  parallel_for(std::size_t(g.modes), [&](std::size_t k) {
    const double l = std::sqrt(op.lambda2[k]);
    const auto gk = g.row(int(k));
    std::vector<double> d(g.samples), w(g.samples);
    switch (variant) {
      case CoefVariant::A:
        second_derivative_uniform(gk, g.dt, d);
        for (int j = 0; j < g.samples; ++j) w[j] = std::sin(l * j * g.dt) * d[j];
        out.f[k] = -gk[0] / (l * l) + trapezoid(w, g.dt) / (l * l * l);
        break;
      case CoefVariant::B:
        derivative_uniform(gk, g.dt, d);
        for (int j = 0; j < g.samples; ++j) w[j] = std::cos(l * j * g.dt) * d[j];
        out.f[k] = -gk[0] / (l * l) - trapezoid(w, g.dt) / (l * l);
        break;
      case CoefVariant::C:
        for (int j = 0; j < g.samples; ++j) w[j] = std::sin(l * j * g.dt) * gk[j];
        out.f[k] = -trapezoid(w, g.dt) / l;
        break;
    }
  });
  return out;
}

ImageGrid recon_varspeed_series(std::span<const double> f, const DiscreteOperatorA& op, const GridSpec& grid) {
  if (int(f.size()) != op.modes()) throw ValidationError("coefficients", "need one coefficient per mode");
  std::vector<double> v(op.nodes.size(), 0.0);
  for (int k = 0; k < op.modes(); ++k) {
    const auto psi = op.mode(k);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += f[k] * psi[i];
  }
  return render(v, op, grid);
}

std::vector<double> harmonic_extension(std::span<const double> boundary_values, const DiscreteOperatorA& op) {
  const auto& impl = *op.impl;
  if (boundary_values.size() != op.boundary.size())
    throw ValidationError("boundary_values", "need one value per boundary node");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(impl.n_int);
  for (std::size_t b = 0; b < boundary_values.size(); ++b)
    if (impl.boundary_inner[b] >= 0) rhs(impl.boundary_inner[b]) += boundary_values[b] / (op.h * op.h);
  const Eigen::VectorXd u = impl.laplace.solve(rhs);
  std::vector<double> out(op.nodes.size(), 0.0);
  for (int r = 0; r < impl.n_int; ++r) out[impl.interior_node[r]] = u(r);
  for (std::size_t b = 0; b < boundary_values.size(); ++b) {
    const auto& p = op.boundary.positions[b];
    const int i = int(std::lround((p[0] - op.nodes.origin[0]) / op.h));
    const int j = int(std::lround((p[1] - op.nodes.origin[1]) / op.h));
    out[op.nodes.flat(i, j)] = boundary_values[b];
  }
  return out;
}

OperatorFormResult recon_operator_form(const WaveRecording& g, const DiscreteOperatorA& op, const GridSpec& grid) {
  check_recording(g, op);
  const auto& impl = *op.impl;
  const int nt = g.samples();
  const int K = op.modes();
  const std::size_t nb = op.boundary.size();
  // Boundary data enters the interior equations through the inner neighbours.
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(impl.n_int, nt);
  for (std::size_t b = 0; b < nb; ++b)
    if (impl.boundary_inner[b] >= 0)
      for (int j = 0; j < nt; ++j) rhs(impl.boundary_inner[b], j) += g.at(b, j) / (op.h * op.h);
  const Eigen::MatrixXd ext = impl.laplace.solve(rhs);  // E g(., t_j) on interior nodes
  // <E g(t_j), psi_k>_w = sum h^2 v^-2 (E g) psi_k
  Eigen::MatrixXd weighted = impl.psi_int;
  for (int r = 0; r < impl.n_int; ++r) {
    const double v = op.speed[impl.interior_node[r]];
    weighted.row(r) *= op.h * op.h / (v * v);
  }
  const Eigen::MatrixXd proj = weighted.transpose() * ext;  // K x nt
  OperatorFormResult out;
  std::vector<double> coef(K, 0.0);
  ModalSeries decay;
  decay.modes = K;
  decay.samples = nt;
  decay.dt = g.dt;
  decay.values.resize(std::size_t(K) * nt);
  parallel_for(std::size_t(K), [&](std::size_t k) {
    std::vector<double> row(nt), tt(nt);
    for (int j = 0; j < nt; ++j) row[j] = proj(Eigen::Index(k), j);
    second_derivative_uniform(row, g.dt, tt);
    const double l = std::sqrt(op.lambda2[k]);
    for (int j = 0; j < nt; ++j) tt[j] *= std::sin(j * g.dt * l) / l;
    coef[k] = -trapezoid(tt, g.dt);
    for (int j = 0; j < nt; ++j) decay.values[k * nt + j] = -op.lambda2[k] * row[j];
  });
  std::vector<double> v(op.nodes.size(), 0.0);
  for (int r = 0; r < impl.n_int; ++r) v[impl.interior_node[r]] = ext(r, 0);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& p = op.boundary.positions[b];
    const int i = int(std::lround((p[0] - op.nodes.origin[0]) / op.h));
    const int j = int(std::lround((p[1] - op.nodes.origin[1]) / op.h));
    v[op.nodes.flat(i, j)] = g.at(b, 0);
  }
  for (int k = 0; k < K; ++k) {
    const auto psi = op.mode(k);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += coef[k] * psi[i];
  }
  out.image = render(v, op, grid);
  out.tail_ratio = tail_ratio(decay);
  out.decay_warning = out.tail_ratio > 0.01;
  return out;
}

}  // namespace tat
