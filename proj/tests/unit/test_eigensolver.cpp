#include <gtest/gtest.h>

#include <Eigen/Sparse>
#include <random>

#include "eigensolver.hpp"

using tat::detail::EigenPairs;

namespace {

// 5-point Dirichlet Laplacian on an n x n interior lattice plus a random
// positive diagonal, so the spectrum has both clusters and near-degeneracies.
Eigen::SparseMatrix<double> test_matrix(int n, double jitter) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0.0, jitter);
  std::vector<Eigen::Triplet<double>> t;
  auto id = [n](int i, int j) { return j * n + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      t.emplace_back(id(i, j), id(i, j), 4.0 + uni(rng));
      if (i > 0) t.emplace_back(id(i, j), id(i - 1, j), -1.0);
      if (i + 1 < n) t.emplace_back(id(i, j), id(i + 1, j), -1.0);
      if (j > 0) t.emplace_back(id(i, j), id(i, j - 1), -1.0);
      if (j + 1 < n) t.emplace_back(id(i, j), id(i, j + 1), -1.0);
    }
  Eigen::SparseMatrix<double> c(n * n, n * n);
  c.setFromTriplets(t.begin(), t.end());
  return c;
}

void expect_matches_dense(const Eigen::SparseMatrix<double>& c, int k) {
  const EigenPairs dense = tat::detail::lowest_eigenpairs_dense(c, k);
  const EigenPairs lanczos = tat::detail::lowest_eigenpairs(c, k);
  EXPECT_GT(lanczos.krylov_dim, 0);
  for (int j = 0; j < k; ++j) EXPECT_NEAR(lanczos.values(j), dense.values(j), 1e-9 * dense.values(j)) << j;
  const Eigen::MatrixXd gram = lanczos.vectors.transpose() * lanczos.vectors;
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::MatrixXd resid = c * lanczos.vectors - lanczos.vectors * lanczos.values.asDiagonal();
  for (int j = 0; j < k; ++j) EXPECT_LT(resid.col(j).norm(), 1e-7 * lanczos.values(j)) << j;
}

}  // namespace

TEST(Eigensolver, MatchesDenseOnDegenerateSpectrum) { expect_matches_dense(test_matrix(30, 0.0), 60); }

TEST(Eigensolver, MatchesDenseWithJitteredDiagonal) { expect_matches_dense(test_matrix(32, 0.5), 100); }

TEST(Eigensolver, SmallProblemsUseTheDensePath) {
  const auto c = test_matrix(10, 0.1);
  const EigenPairs r = tat::detail::lowest_eigenpairs(c, 5);
  EXPECT_EQ(r.krylov_dim, 0);
  EXPECT_THROW(tat::detail::lowest_eigenpairs(c, 0), std::invalid_argument);
  EXPECT_THROW(tat::detail::lowest_eigenpairs(c, 101), std::invalid_argument);
}
