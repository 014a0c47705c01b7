#include "unicluster/spectral.hpp"

#include "unicluster/kernels.hpp"
#include "unicluster/kmeans.hpp"

namespace unicluster {

SymMatrix njw_affinity(const Dataset& data, double sigma, std::size_t* kernel_evaluations) {
  const KernelMatrix km = kernel_matrix(KernelSpec::gaussian(sigma), data);
  if (kernel_evaluations) *kernel_evaluations += km.evaluations;
  const Matrix& k = km.values.matrix();
  const Vector root_w = k.rowwise().sum().cwiseSqrt().cwiseInverse();
  return SymMatrix(root_w.asDiagonal() * k * root_w.asDiagonal());
}

SpectralEmbedding njw_embed(const Dataset& data, int k, double sigma) {
  if (k < 1 || static_cast<std::size_t>(k) > data.size()) {
    throw InvalidArgument("njw_embed: need 1 <= k <= n");
  }
  SpectralEmbedding out;
  const SymMatrix affinity = njw_affinity(data, sigma, &out.kernel_evaluations);
  EigenPairs eig = sym_eig(affinity, k);
  out.eigenvalues = std::move(eig.values);
  out.vectors = std::move(eig.vectors);
  out.rows = out.vectors;
  for (Eigen::Index i = 0; i < out.rows.rows(); ++i) {
    const double norm = out.rows.row(i).norm();
    if (norm > 0.0) out.rows.row(i) /= norm;
  }
  return out;
}

ClusteringReport njw_fit(const Dataset& data, int k, double sigma, const RunConfig& cfg, int restarts) {
  const SpectralEmbedding emb = njw_embed(data, k, sigma);
  const Dataset embedded{RowMatrix(emb.rows)};
  const kmeans::Result part = kmeans::fit_best_of(embedded, k, cfg, restarts);

  ClusteringReport report;
  report.algorithm = "sc";
  report.params = {{"k", k}, {"sigma", sigma}};
  report.labels = part.assignment;
  report.objective_trace = part.objective_trace;
  report.eigenvalues.assign(emb.eigenvalues.data(), emb.eigenvalues.data() + emb.eigenvalues.size());
  report.iterations = part.iterations;
  report.converged = part.converged;
  report.kernel_evaluations = emb.kernel_evaluations;
  report.distance_evaluations = part.distance_evaluations;
  return report;
}

}  // namespace unicluster
