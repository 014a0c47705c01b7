#pragma once

#include <optional>

#include "unicluster/core.hpp"

namespace unicluster {

/// Dense symmetric matrix. Construction checks
/// max|M_ij - M_ji| <= 1e-12 * max|M| and then stores the exact symmetric
/// part, so downstream code may rely on bitwise symmetry.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);

  static SymMatrix identity(Eigen::Index order) { return SymMatrix(Matrix::Identity(order, order)); }
  static SymMatrix diagonal(const Vector& diag);

  Eigen::Index order() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

struct CholeskyFactor {
  Matrix lower;
  double log_det = 0.0;

  /// Solves L y = b.
  Vector solve_lower(const Vector& b) const;
  /// Squared Mahalanobis norm v^T M^{-1} v, via ||L^{-1} v||^2.
  double inverse_quadratic(const Vector& v) const;
};

/// Throws NotPositiveDefinite when a pivot is <= 0.
CholeskyFactor cholesky(const SymMatrix& m);

struct EigenPairs {
  Vector values;   // descending
  Matrix vectors;  // column j pairs with values(j)
};

/// Iteration cap per eigenvalue for the implicit QL sweep.
inline constexpr int kEigenMaxSweeps = 60;

/// Full symmetric eigendecomposition by Householder tridiagonalisation and
/// implicit-shift QL, sorted descending. When top_k is given only the leading
/// top_k pairs are returned. Each eigenvector is signed so that its first
/// entry with magnitude above 1e-12 is positive.
///
/// Throws ConvergenceFailure when an eigenvalue exceeds kEigenMaxSweeps.
EigenPairs sym_eig(const SymMatrix& m, std::optional<Eigen::Index> top_k = std::nullopt);

/// Eigenvalue-equals-one selection tolerance used for component detection.
inline constexpr double kEigenOneTolerance = 1e-8;

}  // namespace unicluster
