#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unicluster/core.hpp"
#include "unicluster/gmm.hpp"

namespace unicluster {

/// Outcome of one clustering run, independent of the algorithm family.
struct ClusteringReport {
  std::string algorithm;
  std::vector<std::pair<std::string, double>> params;
  HardAssignment labels;

  std::vector<double> loglik_trace;
  std::vector<double> objective_trace;
  std::vector<double> eigenvalues;
  int iterations = 0;
  bool converged = true;

  std::optional<RowMatrix> centers;
  std::optional<MixtureModel> mixture;

  // Instrumentation.
  std::size_t distance_evaluations = 0;
  std::size_t kernel_evaluations = 0;
  std::size_t neighborhood_scans = 0;

  std::size_t n_outliers() const { return labels.outlier_count(); }
};

}  // namespace unicluster
