#include "unicluster/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace unicluster {

double covariance_regularization(const Matrix& raw) {
  const double d = static_cast<double>(raw.rows());
  return 1e-9 * raw.trace() / d + 1e-12;
}

SymMatrix regularize_covariance(Matrix raw) {
  const double reg = covariance_regularization(raw);
  raw.diagonal().array() += reg;
  return SymMatrix(std::move(raw));
}

double log_pdf(const GaussianParams& g, const CholeskyFactor& factor,
               const Eigen::Ref<const Vector>& x) {
  if (x.size() != g.mean.size()) throw LengthMismatch("log_pdf: dimension mismatch");
  const double d = static_cast<double>(g.mean.size());
  const double maha = factor.inverse_quadratic(x - g.mean);
  return -0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * factor.log_det - 0.5 * maha;
}

double log_pdf(const GaussianParams& g, const Eigen::Ref<const Vector>& x) {
  return log_pdf(g, cholesky(g.covariance), x);
}

MleFit fit_mle_counted(const Dataset& data) {
  const RowMatrix& x = data.points();
  const auto n = x.rows();
  const auto d = x.cols();
  Vector mean = x.colwise().mean().transpose();

  MleFit out;
  Matrix scatter = Matrix::Zero(d, d);
  Vector dev(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    dev = x.row(i).transpose() - mean;
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) scatter(a, b) += dev(a) * dev(b);
    }
    out.scatter_madds += static_cast<std::size_t>(d * d);
  }
  scatter /= static_cast<double>(n);
  out.params = GaussianParams{std::move(mean), regularize_covariance(std::move(scatter))};
  return out;
}

Dataset sample(const GaussianParams& g, std::size_t count, Rng& rng) {
  if (count < 1) throw InvalidArgument("sample: count must be >= 1");
  const CholeskyFactor factor = cholesky(g.covariance);
  const auto d = g.mean.size();
  RowMatrix out(static_cast<Eigen::Index>(count), d);
  Vector z(d);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.normal();
    out.row(i) = (g.mean + factor.lower * z).transpose();
  }
  return Dataset(std::move(out));
}

}  // namespace unicluster
