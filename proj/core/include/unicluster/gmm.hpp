#pragma once

#include <variant>
#include <vector>

#include "unicluster/core.hpp"
#include "unicluster/gaussian.hpp"
#include "unicluster/linalg.hpp"
#include "unicluster/rng.hpp"

namespace unicluster {

/// k Gaussian components with mixing weights summing to one.
class MixtureModel {
 public:
  MixtureModel(Vector weights, std::vector<Vector> means, std::vector<SymMatrix> covariances);

  int k() const { return static_cast<int>(weights_.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(means_.front().size()); }
  const Vector& weights() const { return weights_; }
  const std::vector<Vector>& means() const { return means_; }
  const std::vector<SymMatrix>& covariances() const { return covariances_; }
  GaussianParams component(int c) const;

 private:
  Vector weights_;
  std::vector<Vector> means_;
  std::vector<SymMatrix> covariances_;
};

struct EStep {
  SoftAssignment resp;
  double log_likelihood = 0.0;
  std::size_t density_evaluations = 0;
};

/// Responsibilities in log space with per-row max subtraction, plus the
/// data log-likelihood as a by-product. Throws DegenerateRow when every
/// component assigns a point zero probability.
EStep expectation(const MixtureModel& model, const Dataset& data);
inline SoftAssignment e_step(const MixtureModel& model, const Dataset& data) {
  return expectation(model, data).resp;
}

/// Components whose mass n_c falls below this fraction of n are reseeded.
inline constexpr double kStarvedComponentFraction = 1e-8;

/// Weighted means, then weighted scatter around the *updated* means, then
/// pi_c = n_c / n. A starved component is moved onto the point with the
/// lowest maximum responsibility, given the global covariance, and its weight
/// is set to 1/n before renormalising.
MixtureModel m_step(const Dataset& data, const SoftAssignment& resp);

/// sum_i log sum_c pi_c N(x_i | mu_c, Sigma_c), via log-sum-exp.
double log_likelihood(const MixtureModel& model, const Dataset& data);

struct EmTrace {
  std::vector<double> log_likelihood;
  int iterations = 0;
  bool converged = false;
};

/// k distinct seeded data points as means, global covariance, uniform weights.
struct InitFromData {};
using GmmInit = std::variant<InitFromData, MixtureModel>;

MixtureModel initial_mixture(const Dataset& data, int k, std::uint64_t seed);

struct EmResult {
  MixtureModel model;
  SoftAssignment resp;
  EmTrace trace;
};

/// Alternates E and M steps until the relative log-likelihood change drops
/// below cfg.tol or cfg.max_iters E steps have run. The returned
/// responsibilities belong to the returned model.
EmResult fit_em(const Dataset& data, int k, const RunConfig& cfg, const GmmInit& init = InitFromData{});

/// Runs fit_em with seeds cfg.seed, cfg.seed+1, ... and keeps the highest
/// final log-likelihood (earliest restart wins ties).
EmResult fit_em_best_of(const Dataset& data, int k, const RunConfig& cfg, int restarts);

/// Draws a component from the weights, then a point from it. Labels hold the
/// component index.
Dataset sample_mixture(const MixtureModel& model, std::size_t count, Rng& rng);

}  // namespace unicluster
