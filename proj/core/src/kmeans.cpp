#include "unicluster/kmeans.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "unicluster/rng.hpp"

namespace unicluster::kmeans {

HardAssignment assign_step(const Centroids& centroids, const Dataset& data,
                           std::size_t* distance_evaluations) {
  if (static_cast<std::size_t>(centroids.cols()) != data.dim()) {
    throw LengthMismatch("assign_step: centroid dimension mismatch");
  }
  const auto k = centroids.rows();
  std::vector<int> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.point(i);
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (Eigen::Index c = 0; c < k; ++c) {
      const double dist = (x - centroids.row(c)).squaredNorm();
      if (dist < best) {
        best = dist;
        best_c = static_cast<int>(c);
      }
    }
    out[i] = best_c;
  }
  if (distance_evaluations) *distance_evaluations += data.size() * static_cast<std::size_t>(k);
  return HardAssignment(std::move(out), static_cast<int>(k));
}

Centroids update_step(const Dataset& data, const HardAssignment& assign, const Centroids& previous) {
  if (assign.size() != data.size()) throw LengthMismatch("update_step: assignment length mismatch");
  const int k = assign.k();
  const auto d = static_cast<Eigen::Index>(data.dim());
  Centroids sums = Centroids::Zero(k, d);
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int c = assign[i];
    sums.row(c) += data.point(i);
    ++counts[static_cast<std::size_t>(c)];
  }

  std::vector<bool> used(data.size(), false);
  for (int c = 0; c < k; ++c) {
    const auto count = counts[static_cast<std::size_t>(c)];
    if (count > 0) {
      sums.row(c) /= static_cast<double>(count);
      continue;
    }
    double far = -1.0;
    std::size_t far_i = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (used[i]) continue;
      const double dist = (data.point(i) - previous.row(assign[i])).squaredNorm();
      if (dist > far) {
        far = dist;
        far_i = i;
      }
    }
    used[far_i] = true;
    sums.row(c) = data.point(far_i);
  }
  return sums;
}

double objective(const Dataset& data, const HardAssignment& assign, const Centroids& centroids) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += (data.point(i) - centroids.row(assign[i])).squaredNorm();
  }
  return total;
}

Centroids forgy(const Dataset& data, int k, std::uint64_t seed) {
  Rng rng(seed);
  const auto picks = rng.sample_without_replacement(data.size(), static_cast<std::size_t>(k));
  Centroids out(k, static_cast<Eigen::Index>(data.dim()));
  for (int c = 0; c < k; ++c) out.row(c) = data.point(picks[static_cast<std::size_t>(c)]);
  return out;
}

Result fit(const Dataset& data, int k, const RunConfig& cfg, const Init& init) {
  cfg.validate();
  if (k < 1) throw InvalidArgument("kmeans: k must be >= 1");
  if (data.size() < static_cast<std::size_t>(k)) throw InvalidArgument("kmeans: need n >= k");

  Result out;
  out.centroids = std::holds_alternative<Centroids>(init) ? std::get<Centroids>(init)
                                                          : forgy(data, k, cfg.seed);
  if (out.centroids.rows() != k) throw InvalidArgument("kmeans: initial centroids have wrong k");

  while (out.iterations < cfg.max_iters) {
    HardAssignment next = assign_step(out.centroids, data, &out.distance_evaluations);
    ++out.iterations;
    if (!out.history.empty() && next == out.history.back()) {
      out.converged = true;
      break;
    }
    out.centroids = update_step(data, next, out.centroids);
    out.objective_trace.push_back(objective(data, next, out.centroids));
    out.history.push_back(std::move(next));
  }
  out.assignment = out.history.back();
  return out;
}

Result fit_best_of(const Dataset& data, int k, const RunConfig& cfg, int restarts) {
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  std::optional<Result> best;
  for (int r = 0; r < restarts; ++r) {
    RunConfig run = cfg;
    run.seed = cfg.seed + static_cast<std::uint64_t>(r);
    Result res = fit(data, k, run);
    if (!best || res.objective_trace.back() < best->objective_trace.back()) best = std::move(res);
  }
  return std::move(*best);
}

SoftAssignment spherical_responsibilities(const Centroids& centroids, const Dataset& data,
                                          double eps, const Vector& weights) {
  if (!(eps > 0.0)) throw InvalidArgument("spherical_responsibilities: eps must be > 0");
  const auto k = centroids.rows();
  if (weights.size() != k) throw LengthMismatch("spherical_responsibilities: weights length != k");
  Matrix resp(static_cast<Eigen::Index>(data.size()), k);
  Vector logits(k);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (Eigen::Index c = 0; c < k; ++c) {
      logits(c) = std::log(weights(c)) - (data.point(i) - centroids.row(c)).squaredNorm() / (2.0 * eps);
    }
    const double top = logits.maxCoeff();
    const Vector shifted = (logits.array() - top).exp().matrix();
    resp.row(static_cast<Eigen::Index>(i)) = (shifted / shifted.sum()).transpose();
  }
  return SoftAssignment(std::move(resp));
}

}  // namespace unicluster::kmeans
