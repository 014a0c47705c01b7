#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "unicluster/core.hpp"

namespace unicluster::kmeans {

/// k centroids, one per row.
using Centroids = RowMatrix;

/// Nearest centroid by squared Euclidean distance; ties go to the lowest
/// index. distance_evaluations, when given, is increased by n*k.
HardAssignment assign_step(const Centroids& centroids, const Dataset& data,
                           std::size_t* distance_evaluations = nullptr);

/// Cluster means. An empty cluster takes the point farthest from its own
/// current centroid (each such point used at most once); `previous` supplies
/// those current centroids.
Centroids update_step(const Dataset& data, const HardAssignment& assign, const Centroids& previous);

/// sum_c sum_{i in c} ||x_i - mu_c||^2.
double objective(const Dataset& data, const HardAssignment& assign, const Centroids& centroids);

/// Plain Forgy: k distinct seeded data points.
struct ForgyInit {};
using Init = std::variant<ForgyInit, Centroids>;

Centroids forgy(const Dataset& data, int k, std::uint64_t seed);

struct Result {
  Centroids centroids;
  HardAssignment assignment;
  /// Objective after each mean update.
  std::vector<double> objective_trace;
  /// Assignments produced by successive assign steps, excluding the final
  /// repeat that signals convergence.
  std::vector<HardAssignment> history;
  int iterations = 0;
  bool converged = false;
  std::size_t distance_evaluations = 0;
};

/// Lloyd iterations until the assignment repeats exactly or cfg.max_iters
/// assign steps have run.
Result fit(const Dataset& data, int k, const RunConfig& cfg, const Init& init = ForgyInit{});

/// Forgy restarts with seeds cfg.seed + r; lowest final objective wins,
/// earliest restart on ties.
Result fit_best_of(const Dataset& data, int k, const RunConfig& cfg, int restarts);

/// Responsibilities of the spherical GMM with covariance eps * I:
/// lambda_ic proportional to pi_c exp(-||x_i - mu_c||^2 / (2 eps)), normalised
/// in log space.
SoftAssignment spherical_responsibilities(const Centroids& centroids, const Dataset& data,
                                          double eps, const Vector& weights);

}  // namespace unicluster::kmeans
