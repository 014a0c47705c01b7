#pragma once

#include "unicluster/core.hpp"
#include "unicluster/linalg.hpp"
#include "unicluster/report.hpp"

namespace unicluster {

struct SpectralEmbedding {
  /// Top-k eigenvectors of W^{1/2} K W^{1/2}, orthonormal columns.
  Matrix vectors;
  /// Same rows scaled to unit length; the partition step clusters these.
  Matrix rows;
  Vector eigenvalues;
  std::size_t kernel_evaluations = 0;
};

/// W^{1/2} K W^{1/2} with K the gaussian kernel matrix and W = diag(K 1)^{-1}.
SymMatrix njw_affinity(const Dataset& data, double sigma, std::size_t* kernel_evaluations = nullptr);

SpectralEmbedding njw_embed(const Dataset& data, int k, double sigma);

/// Number of k-means restarts in the partition step unless overridden.
inline constexpr int kSpectralPartitionRestarts = 10;

/// Embeds, then runs best-of-restarts k-means on the normalised rows.
ClusteringReport njw_fit(const Dataset& data, int k, double sigma, const RunConfig& cfg,
                         int restarts = kSpectralPartitionRestarts);

}  // namespace unicluster
