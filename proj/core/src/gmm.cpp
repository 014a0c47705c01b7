#include "unicluster/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace unicluster {

MixtureModel::MixtureModel(Vector weights, std::vector<Vector> means,
                           std::vector<SymMatrix> covariances)
    : weights_(std::move(weights)), means_(std::move(means)), covariances_(std::move(covariances)) {
  const auto k = static_cast<std::size_t>(weights_.size());
  if (k < 1) throw InvalidArgument("mixture needs at least one component");
  if (means_.size() != k || covariances_.size() != k) {
    throw LengthMismatch("mixture: weights, means and covariances disagree on k");
  }
  const auto d = means_.front().size();
  for (std::size_t c = 0; c < k; ++c) {
    if (means_[c].size() != d || covariances_[c].order() != d) {
      throw LengthMismatch("mixture: component " + std::to_string(c) + " has wrong dimension");
    }
    const double w = weights_(static_cast<Eigen::Index>(c));
    if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("mixing weight outside [0,1]");
  }
  if (std::abs(weights_.sum() - 1.0) > 1e-9) {
    throw InvalidArgument("mixing weights sum to " + std::to_string(weights_.sum()));
  }
}

GaussianParams MixtureModel::component(int c) const {
  const auto i = static_cast<std::size_t>(c);
  return GaussianParams{means_[i], covariances_[i]};
}

EStep expectation(const MixtureModel& model, const Dataset& data) {
  if (data.dim() != model.dim()) throw LengthMismatch("e_step: dimension mismatch");
  const int k = model.k();
  const auto n = static_cast<Eigen::Index>(data.size());

  std::vector<GaussianParams> comps;
  std::vector<CholeskyFactor> factors;
  for (int c = 0; c < k; ++c) {
    comps.push_back(model.component(c));
    factors.push_back(cholesky(comps.back().covariance));
  }

  EStep out;
  Matrix resp(n, k);
  Vector logits(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector x = data.point(static_cast<std::size_t>(i)).transpose();
    for (int c = 0; c < k; ++c) {
      logits(c) = std::log(model.weights()(c)) + log_pdf(comps[static_cast<std::size_t>(c)],
                                                          factors[static_cast<std::size_t>(c)], x);
    }
    out.density_evaluations += static_cast<std::size_t>(k);
    const double top = logits.maxCoeff();
    if (!std::isfinite(top)) {
      throw DegenerateRow("point " + std::to_string(i) + " has zero probability under every component");
    }
    const Vector shifted = (logits.array() - top).exp().matrix();
    const double mass = shifted.sum();
    const double lse = top + std::log(mass);
    resp.row(i) = (shifted / mass).transpose();
    out.log_likelihood += lse;
  }
  out.resp = SoftAssignment(std::move(resp));
  return out;
}

double log_likelihood(const MixtureModel& model, const Dataset& data) {
  return expectation(model, data).log_likelihood;
}

MixtureModel m_step(const Dataset& data, const SoftAssignment& soft) {
  if (soft.size() != data.size()) throw LengthMismatch("m_step: responsibilities do not match data");
  const RowMatrix& x = data.points();
  const Matrix& resp = soft.resp();
  const int k = soft.k();
  const double n = static_cast<double>(data.size());
  const Vector mass = resp.colwise().sum().transpose();

  std::vector<int> starved;
  for (int c = 0; c < k; ++c) {
    if (mass(c) < kStarvedComponentFraction * n) starved.push_back(c);
  }

  Vector weights(k);
  std::vector<Vector> means(static_cast<std::size_t>(k));
  std::vector<SymMatrix> covs(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    if (std::find(starved.begin(), starved.end(), c) != starved.end()) continue;
    const Vector r = resp.col(c);
    Vector mu = (x.transpose() * r) / mass(c);
    const Matrix centered = x.rowwise() - mu.transpose();
    Matrix scatter = centered.transpose() * r.asDiagonal() * centered / mass(c);
    means[static_cast<std::size_t>(c)] = std::move(mu);
    covs[static_cast<std::size_t>(c)] = regularize_covariance(std::move(scatter));
    weights(c) = mass(c) / n;
  }

  if (!starved.empty()) {
    const GaussianParams global = fit_mle(data);
    std::vector<std::size_t> by_confidence(data.size());
    std::iota(by_confidence.begin(), by_confidence.end(), std::size_t{0});
    const Vector top = resp.rowwise().maxCoeff();
    std::stable_sort(by_confidence.begin(), by_confidence.end(), [&](std::size_t a, std::size_t b) {
      return top(static_cast<Eigen::Index>(a)) < top(static_cast<Eigen::Index>(b));
    });
    for (std::size_t s = 0; s < starved.size(); ++s) {
      const auto c = static_cast<std::size_t>(starved[s]);
      means[c] = data.point(by_confidence[s % by_confidence.size()]).transpose();
      covs[c] = global.covariance;
      weights(starved[s]) = 1.0 / n;
    }
    weights /= weights.sum();
  }
  return MixtureModel(std::move(weights), std::move(means), std::move(covs));
}

MixtureModel initial_mixture(const Dataset& data, int k, std::uint64_t seed) {
  Rng rng(seed);
  const auto picks = rng.sample_without_replacement(data.size(), static_cast<std::size_t>(k));
  const GaussianParams global = fit_mle(data);
  std::vector<Vector> means;
  std::vector<SymMatrix> covs;
  for (std::size_t p : picks) {
    means.emplace_back(data.point(p).transpose());
    covs.push_back(global.covariance);
  }
  return MixtureModel(Vector::Constant(k, 1.0 / k), std::move(means), std::move(covs));
}

EmResult fit_em(const Dataset& data, int k, const RunConfig& cfg, const GmmInit& init) {
  cfg.validate();
  if (k < 1) throw InvalidArgument("fit_em: k must be >= 1");
  if (data.size() < static_cast<std::size_t>(k)) throw InvalidArgument("fit_em: need n >= k");

  MixtureModel model = std::holds_alternative<MixtureModel>(init)
                           ? std::get<MixtureModel>(init)
                           : initial_mixture(data, k, cfg.seed);
  if (model.k() != k) throw InvalidArgument("fit_em: initial model has wrong k");

  EmTrace trace;
  for (int it = 0;; ++it) {
    EStep e = expectation(model, data);
    trace.log_likelihood.push_back(e.log_likelihood);
    trace.iterations = it + 1;
    const auto& ll = trace.log_likelihood;
    if (ll.size() >= 2) {
      const double prev = ll[ll.size() - 2];
      if (std::abs(ll.back() - prev) <= cfg.tol * std::abs(prev)) trace.converged = true;
    }
    if (trace.converged || trace.iterations >= cfg.max_iters) {
      return EmResult{std::move(model), std::move(e.resp), std::move(trace)};
    }
    model = m_step(data, e.resp);
  }
}

EmResult fit_em_best_of(const Dataset& data, int k, const RunConfig& cfg, int restarts) {
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  std::optional<EmResult> best;
  for (int r = 0; r < restarts; ++r) {
    RunConfig run = cfg;
    run.seed = cfg.seed + static_cast<std::uint64_t>(r);
    EmResult res = fit_em(data, k, run);
    if (!best || res.trace.log_likelihood.back() > best->trace.log_likelihood.back()) {
      best = std::move(res);
    }
  }
  return std::move(*best);
}

Dataset sample_mixture(const MixtureModel& model, std::size_t count, Rng& rng) {
  if (count < 1) throw InvalidArgument("sample_mixture: count must be >= 1");
  const int k = model.k();
  const auto d = static_cast<Eigen::Index>(model.dim());
  std::vector<CholeskyFactor> factors;
  for (int c = 0; c < k; ++c) factors.push_back(cholesky(model.covariances()[static_cast<std::size_t>(c)]));

  RowMatrix points(static_cast<Eigen::Index>(count), d);
  std::vector<int> labels(count);
  Vector z(d);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = k > 1 ? rng.uniform() : 0.0;
    int c = 0;
    double cumulative = model.weights()(0);
    while (u >= cumulative && c + 1 < k) cumulative += model.weights()(++c);
    // Skip zero-weight components that the loop may land on through rounding.
    while (model.weights()(c) == 0.0 && c > 0) --c;
    for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.normal();
    const auto ci = static_cast<std::size_t>(c);
    points.row(static_cast<Eigen::Index>(i)) = (model.means()[ci] + factors[ci].lower * z).transpose();
    labels[i] = c;
  }
  return Dataset(std::move(points), std::move(labels));
}

}  // namespace unicluster
