#pragma once

#include <optional>
#include <vector>

#include "unicluster/core.hpp"
#include "unicluster/report.hpp"

namespace unicluster {

struct DbscanParams {
  double eps = 0.5;
  int min_pts = 5;

  void validate() const;
};

/// Indices j with ||x - x_j|| <= eps, ascending. Includes x's own index when
/// x is a dataset point.
std::vector<std::size_t> eps_neighborhood(const Dataset& data, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                                          double eps);

/// Symmetric Euclidean distance matrix; only the strict upper triangle is
/// evaluated (n(n-1)/2 evaluations), the diagonal is zero.
struct PairwiseDistances {
  Matrix dist;
  std::size_t evaluations = 0;
};
PairwiseDistances pairwise_distances(const Dataset& data);

/// Core rule shared by every DBSCAN formulation: |N_eps(x_i)| >= min_pts,
/// the point itself counted.
std::vector<bool> core_points(const PairwiseDistances& d, const DbscanParams& p);

/// Core points, core-core eps-edges, DFS components, then each non-core point
/// joins the cluster of its nearest core point (lowest index on ties) when
/// that point is within eps, otherwise it is an outlier.
ClusteringReport dbscan_graph(const Dataset& data, const DbscanParams& p);

/// Heaviside graph, degree filter (core / unprocessed / outlier) with the same
/// core rule, degrees recomputed on the core subgraph, components from the
/// eigenvalue-one eigenspace, then the border rule of dbscan_graph.
ClusteringReport dbscan_spectral(const Dataset& data, const DbscanParams& p);

enum class Profile {
  kFlat,          // 1 on u <= 1
  kEpanechnikov,  // 1 - u on u <= 1
  kGaussian,      // exp(-u / 2)
};

double profile_value(Profile profile, double u);

/// (1 / (n h^d)) sum_i profile(||(x - x_i) / h||^2).
double kde(const Dataset& data, const Eigen::Ref<const Eigen::RowVectorXd>& x, Profile profile, double h);

/// x - mean(N_eps(x)). Throws EmptyNeighborhood when N_eps(x) is empty.
Vector mean_shift_vector(const Dataset& data, const Eigen::Ref<const Eigen::RowVectorXd>& x, double eps);

struct ClimbOptions {
  int max_iters = 500;
  /// A step shorter than delta_factor * eps is a fixed point.
  double delta_factor = 1e-6;
  bool record_paths = false;
};

/// Per-point hill climbing over the static original dataset.
struct ClimbState {
  RowMatrix positions;
  std::vector<int> iterations;
  std::vector<bool> reached_density;
  std::vector<bool> fixed_point;
  /// Visited positions including the start, when requested.
  std::vector<std::vector<Eigen::RowVectorXd>> paths;
  std::size_t neighborhood_scans = 0;
};

/// Moves every point to the mean of its eps-neighbourhood until it sees at
/// least min_pts neighbours (when given), reaches a fixed point, or runs out
/// of iterations. Without min_pts this is plain mean shift.
ClimbState climb(const Dataset& data, double eps, std::optional<int> min_pts, const ClimbOptions& opts = {});

/// Climbing-hill DBSCAN. Climbed points are linked within eps and split into
/// components; a size-one component whose point never reached min_pts
/// neighbours is an outlier.
ClusteringReport dbscan_climb(const Dataset& data, const DbscanParams& p, const ClimbOptions& opts = {});

/// Mean shift with a flat kernel of radius eps. Every point climbs to a fixed
/// point; converged points within eps form clusters; size-one components are
/// outliers. centers holds the mean converged position per cluster.
ClusteringReport mean_shift(const Dataset& data, double eps, const ClimbOptions& opts = {});

}  // namespace unicluster
