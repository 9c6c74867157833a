#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace tat::detail {

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
  int krylov_dim = 0;       // 0 when the dense path was taken
};

struct LanczosOptions {
  int block = 16;
  double tol = 1e-8;           // ||C x - mu x|| <= tol * mu
  int dense_below = 600;       // problems this small use the dense solver
  unsigned long long seed = 0x5eed;
};

/// Lowest k eigenpairs of a sparse symmetric positive definite matrix by
/// shift-invert block Lanczos (shift 0) with full reorthogonalization and a
/// Rayleigh-Ritz step on C itself.
EigenPairs lowest_eigenpairs(const Eigen::SparseMatrix<double>& c, int k, const LanczosOptions& opt = {});

/// Dense reference path.
EigenPairs lowest_eigenpairs_dense(const Eigen::SparseMatrix<double>& c, int k);

}  // namespace tat::detail
