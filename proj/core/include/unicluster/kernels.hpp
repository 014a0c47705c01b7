#pragma once

#include <string>
#include <vector>

#include "unicluster/core.hpp"
#include "unicluster/linalg.hpp"

namespace unicluster {

enum class KernelKind { kGaussian, kPolynomial, kHeaviside, kLinear };

/// Kernel function with its parameters.
///   gaussian(sigma):  exp(-||x-y||^2 / (2 sigma^2))
///   polynomial(c, b): (x.y + c)^b
///   heaviside(eps):   1 if ||x-y|| <= eps else 0
///   linear:           x.y
struct KernelSpec {
  KernelKind kind = KernelKind::kLinear;
  double sigma = 1.0;
  double offset = 0.0;
  double degree = 1.0;
  double radius = 1.0;

  static KernelSpec gaussian(double sigma);
  static KernelSpec polynomial(double offset, double degree);
  static KernelSpec heaviside(double radius);
  static KernelSpec linear() { return KernelSpec{}; }

  std::string name() const;
};

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                   const Eigen::Ref<const Eigen::RowVectorXd>& y);

struct KernelMatrix {
  SymMatrix values;
  KernelSpec spec;
  /// Kernel evaluations performed; n(n+1)/2 since only the upper triangle is
  /// evaluated.
  std::size_t evaluations = 0;
};

KernelMatrix kernel_matrix(const KernelSpec& spec, const Dataset& data);

/// Assignment plus per-cluster weight totals s_c and the cached pairwise term
/// sum_{j,l in c} w_j w_l K_jl / s_c^2.
class WkkState {
 public:
  WkkState(const SymMatrix& kernel, const Vector& weights, HardAssignment assignment);

  const HardAssignment& assignment() const { return assignment_; }
  const Vector& weights() const { return weights_; }
  const Vector& cluster_weight() const { return cluster_weight_; }
  const Vector& pairwise_term() const { return pairwise_term_; }

 private:
  Vector weights_;
  HardAssignment assignment_;
  Vector cluster_weight_;
  Vector pairwise_term_;
};

/// ||phi(x_i) - m_c||^2 through the kernel trick:
/// K_ii - 2 sum_{j in c} w_j K_ij / s_c + pairwise_term_c.
/// Throws EmptyCluster when s_c = 0.
double wkk_point_distance(const SymMatrix& kernel, const WkkState& state, std::size_t i, int c);

/// sum_c sum_{i in c} w_i ||phi(x_i) - m_c||^2.
double wkk_objective(const SymMatrix& kernel, const Vector& weights, const HardAssignment& assignment);

struct WkkResult {
  HardAssignment assignment;
  std::vector<double> objective_trace;
  /// Initial assignment followed by each changed assignment.
  std::vector<HardAssignment> history;
  int iterations = 0;
  bool converged = false;
};

/// Weighted kernel k-means. Every cluster of `init` must be non-empty. A
/// cluster emptied by an E step receives the point with the largest current
/// distance to its own cluster, taken from clusters holding more than one
/// point.
WkkResult wkk_fit(const SymMatrix& kernel, const Vector& weights, int k, const RunConfig& cfg,
                  const HardAssignment& init);

/// Seeded random partition with sizes differing by at most one.
HardAssignment balanced_partition(std::size_t n, int k, std::uint64_t seed);

/// Restarts wkk_fit from balanced partitions seeded cfg.seed + r; the lowest
/// final objective wins.
WkkResult wkk_fit_best_of(const SymMatrix& kernel, const Vector& weights, int k,
                          const RunConfig& cfg, int restarts);

/// Tr(Y^T W^{1/2} K W^{1/2} Y) with Y_ic = sqrt(w_i / s_c) for i in cluster c.
/// Throws InvalidArgument when Y^T Y deviates from I by more than 1e-10.
double wkk_trace_objective(const SymMatrix& kernel, const Vector& weights,
                           const HardAssignment& assignment);

/// The n x k matrix Y used by wkk_trace_objective.
Matrix weighted_assignment_matrix(const Vector& weights, const HardAssignment& assignment);

}  // namespace unicluster
