#pragma once

#include <cstddef>

#include "unicluster/core.hpp"
#include "unicluster/linalg.hpp"
#include "unicluster/rng.hpp"

namespace unicluster {

struct GaussianParams {
  Vector mean;
  SymMatrix covariance;

  std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
};

/// Diagonal loading applied to every fitted covariance:
/// 1e-9 * trace(raw)/d + 1e-12.
double covariance_regularization(const Matrix& raw);

/// Adds covariance_regularization(raw) to the diagonal.
SymMatrix regularize_covariance(Matrix raw);

/// log N(x | mean, cov), evaluated through the Cholesky factor.
double log_pdf(const GaussianParams& g, const Eigen::Ref<const Vector>& x);

/// Same as log_pdf with a precomputed factor of g.covariance.
double log_pdf(const GaussianParams& g, const CholeskyFactor& factor,
               const Eigen::Ref<const Vector>& x);

struct MleFit {
  GaussianParams params;
  /// Multiply-adds spent accumulating the scatter matrix (n * d^2).
  std::size_t scatter_madds = 0;
};

/// Sample mean and (1/n) scatter, regularised.
MleFit fit_mle_counted(const Dataset& data);
inline GaussianParams fit_mle(const Dataset& data) { return fit_mle_counted(data).params; }

/// count draws of mean + L z, z standard normal.
Dataset sample(const GaussianParams& g, std::size_t count, Rng& rng);

}  // namespace unicluster
