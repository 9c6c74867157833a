#include "eigensolver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tat::detail {

EigenPairs lowest_eigenpairs_dense(const Eigen::SparseMatrix<double>& c, int k) {
  const Eigen::MatrixXd dense = Eigen::MatrixXd(c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  EigenPairs out;
  out.values = es.eigenvalues().head(k);
  out.vectors = es.eigenvectors().leftCols(k);
  return out;
}

namespace {

// Orthonormalizes the columns of w against q[:, :used] and among themselves.
// Columns that collapse are replaced by fresh random directions.
void orthonormalize(const Eigen::MatrixXd& q, int used, Eigen::MatrixXd& w, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto project_out = [&](Eigen::MatrixXd& x) {
    if (used > 0) x -= q.leftCols(used) * (q.leftCols(used).transpose() * x);
  };
  project_out(w);
  for (int j = 0; j < w.cols(); ++j) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      const double before = w.col(j).norm();
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < j; ++i) w.col(j) -= w.col(i).dot(w.col(j)) * w.col(i);
      const double after = w.col(j).norm();
      if (after > 1e-8 * std::max(before, 1e-300)) {
        w.col(j) /= after;
        break;
      }
      // Collapsed direction: restart it from noise, orthogonal to everything so far.
      Eigen::MatrixXd fresh(w.rows(), 1);
      for (Eigen::Index r = 0; r < w.rows(); ++r) fresh(r, 0) = uni(rng);
      project_out(fresh);
      w.col(j) = fresh.col(0);
    }
  }
  // Second classical Gram-Schmidt pass against Q restores orthogonality to rounding.
  project_out(w);
  for (int j = 0; j < w.cols(); ++j) w.col(j).normalize();
}

}  // namespace

EigenPairs lowest_eigenpairs(const Eigen::SparseMatrix<double>& c, int k, const LanczosOptions& opt) {
  const int n = int(c.rows());
  if (k < 1 || k > n) throw std::invalid_argument("lowest_eigenpairs: k out of range");
  if (n < opt.dense_below || 2 * k > n) return lowest_eigenpairs_dense(c, k);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(c);
  if (ldlt.info() != Eigen::Success) throw std::runtime_error("lowest_eigenpairs: factorization failed");

  const int b = opt.block;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::MatrixXd q(n, std::min(n - n % b, 13 * k / 5 + 10 * b));
  int used = 0;
  Eigen::MatrixXd block(n, b);
  for (int j = 0; j < b; ++j)
    for (int r = 0; r < n; ++r) block(r, j) = uni(rng);
  orthonormalize(q, 0, block, rng);

  int target = int(q.cols());
  EigenPairs out;
  while (true) {
    while (used + b <= target) {
      q.middleCols(used, b) = block;
      used += b;
      if (used + b > n) break;
      Eigen::MatrixXd w = ldlt.solve(q.middleCols(used - b, b));
      orthonormalize(q, used, w, rng);
      block = w;
    }
    // Rayleigh-Ritz with C on span(Q).
    const Eigen::MatrixXd cq = c * q.leftCols(used);
    const Eigen::MatrixXd h = q.leftCols(used).transpose() * cq;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
    const Eigen::MatrixXd y = es.eigenvectors().leftCols(k);
    out.values = es.eigenvalues().head(k);
    out.vectors = q.leftCols(used) * y;
    const Eigen::MatrixXd resid = cq * y - out.vectors * out.values.asDiagonal();
    double worst = 0.0;
    for (int j = 0; j < k; ++j) worst = std::max(worst, resid.col(j).norm() / out.values(j));
    out.krylov_dim = used;
    if (worst <= opt.tol || used + b > n) break;
    target = std::min(n - n % b, used + used / 8 + b);
    if (target <= used) break;
    q.conservativeResize(Eigen::NoChange, target);
  }
  return out;
}

}  // namespace tat::detail
