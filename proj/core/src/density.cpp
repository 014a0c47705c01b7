#include "unicluster/density.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "unicluster/graph.hpp"

namespace unicluster {

void DbscanParams::validate() const {
  if (!(eps > 0.0)) throw InvalidArgument("dbscan: eps must be > 0");
  if (min_pts < 1) throw InvalidArgument("dbscan: min_pts must be >= 1");
}

std::vector<std::size_t> eps_neighborhood(const Dataset& data, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                                          double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps_neighborhood: eps must be > 0");
  if (static_cast<std::size_t>(x.size()) != data.dim()) throw LengthMismatch("eps_neighborhood: dimension mismatch");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < data.size(); ++j) {
    if ((x - data.point(j)).norm() <= eps) out.push_back(j);
  }
  return out;
}

PairwiseDistances pairwise_distances(const Dataset& data) {
  const auto n = static_cast<Eigen::Index>(data.size());
  PairwiseDistances out;
  out.dist = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (data.points().row(i) - data.points().row(j)).norm();
      out.dist(i, j) = v;
      out.dist(j, i) = v;
      ++out.evaluations;
    }
  }
  return out;
}

std::vector<bool> core_points(const PairwiseDistances& d, const DbscanParams& p) {
  const auto n = d.dist.rows();
  std::vector<bool> core(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto count = (d.dist.row(i).array() <= p.eps).count();
    core[static_cast<std::size_t>(i)] = count >= p.min_pts;
  }
  return core;
}

namespace {

SymMatrix heaviside_adjacency(const Matrix& dist, double eps) {
  return SymMatrix((dist.array() <= eps).cast<double>().matrix());
}

// Scatters component ids of the core subgraph back to all points and applies
// the nearest-core border rule.
HardAssignment resolve_borders(const Matrix& dist, const std::vector<std::size_t>& core_idx,
                               const HardAssignment& core_components, double eps) {
  const auto n = static_cast<std::size_t>(dist.rows());
  std::vector<int> labels(n, kOutlier);
  std::vector<bool> is_core(n, false);
  for (std::size_t c = 0; c < core_idx.size(); ++c) {
    labels[core_idx[c]] = core_components[c];
    is_core[core_idx[c]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_core[i] || core_idx.empty()) continue;
    double best = std::numeric_limits<double>::infinity();
    std::size_t nearest = 0;
    for (std::size_t j : core_idx) {
      const double v = dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v < best) {
        best = v;
        nearest = j;
      }
    }
    if (best <= eps) labels[i] = labels[nearest];
  }
  return canonicalize(HardAssignment(std::move(labels)));
}

std::vector<std::size_t> indices_where(const std::vector<bool>& mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

ClusteringReport dbscan_report(std::string name, const DbscanParams& p) {
  ClusteringReport r;
  r.algorithm = std::move(name);
  r.params = {{"eps", p.eps}, {"min_pts", p.min_pts}};
  return r;
}

}  // namespace

ClusteringReport dbscan_graph(const Dataset& data, const DbscanParams& p) {
  p.validate();
  const PairwiseDistances d = pairwise_distances(data);
  const auto core_idx = indices_where(core_points(d, p));

  ClusteringReport report = dbscan_report("dbscan", p);
  report.distance_evaluations = d.evaluations;
  HardAssignment core_components;
  if (!core_idx.empty()) {
    const SimilarityGraph all{heaviside_adjacency(d.dist, p.eps)};
    core_components = connected_components_dfs(all.induced(core_idx));
  }
  report.labels = resolve_borders(d.dist, core_idx, core_components, p.eps);
  return report;
}

ClusteringReport dbscan_spectral(const Dataset& data, const DbscanParams& p) {
  p.validate();
  const PairwiseDistances d = pairwise_distances(data);
  SimilarityGraph g{heaviside_adjacency(d.dist, p.eps)};

  // Degrees include the self-loop, so d_i = |N_eps(x_i)|.
  std::vector<NodeLabel> labels(g.size());
  std::vector<std::size_t> core_idx;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double deg = g.degree()(static_cast<Eigen::Index>(i));
    if (deg >= p.min_pts) {
      labels[i] = NodeLabel::kCore;
      core_idx.push_back(i);
    } else if (deg <= 1.0) {
      labels[i] = NodeLabel::kOutlier;
    } else {
      labels[i] = NodeLabel::kUnprocessed;
    }
  }
  g.set_labels(std::move(labels));

  ClusteringReport report = dbscan_report("dbscan-spectral", p);
  report.distance_evaluations = d.evaluations;
  HardAssignment core_components;
  if (!core_idx.empty()) {
    const EigenOneComponents eig = eigenone_decomposition(g.induced(core_idx));
    core_components = eig.components;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(eig.multiplicity); ++j) {
      report.eigenvalues.push_back(eig.eigenvalues(j));
    }
  }
  report.labels = resolve_borders(d.dist, core_idx, core_components, p.eps);
  return report;
}

double profile_value(Profile profile, double u) {
  switch (profile) {
    case Profile::kFlat: return u <= 1.0 ? 1.0 : 0.0;
    case Profile::kEpanechnikov: return u <= 1.0 ? 1.0 - u : 0.0;
    case Profile::kGaussian: return std::exp(-0.5 * u);
  }
  return 0.0;
}

double kde(const Dataset& data, const Eigen::Ref<const Eigen::RowVectorXd>& x, Profile profile, double h) {
  if (!(h > 0.0)) throw InvalidArgument("kde: bandwidth must be > 0");
  if (static_cast<std::size_t>(x.size()) != data.dim()) throw LengthMismatch("kde: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += profile_value(profile, (x - data.point(i)).squaredNorm() / (h * h));
  }
  const double n = static_cast<double>(data.size());
  return total / (n * std::pow(h, static_cast<double>(data.dim())));
}

namespace {

// Mean of N_eps(x); returns the neighbourhood size.
std::size_t neighborhood_mean(const Dataset& data, const Eigen::RowVectorXd& x, double eps,
                              Eigen::RowVectorXd& mean) {
  mean.setZero(x.size());
  std::size_t count = 0;
  for (std::size_t j = 0; j < data.size(); ++j) {
    if ((x - data.point(j)).norm() <= eps) {
      mean += data.point(j);
      ++count;
    }
  }
  if (count > 0) mean /= static_cast<double>(count);
  return count;
}

}  // namespace

Vector mean_shift_vector(const Dataset& data, const Eigen::Ref<const Eigen::RowVectorXd>& x, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("mean_shift_vector: eps must be > 0");
  Eigen::RowVectorXd mean;
  if (neighborhood_mean(data, x, eps, mean) == 0) {
    throw EmptyNeighborhood("no data point within eps of the query");
  }
  return (x - mean).transpose();
}

ClimbState climb(const Dataset& data, double eps, std::optional<int> min_pts, const ClimbOptions& opts) {
  if (!(eps > 0.0)) throw InvalidArgument("climb: eps must be > 0");
  if (opts.max_iters < 1) throw InvalidArgument("climb: max_iters must be >= 1");
  const std::size_t n = data.size();
  const double delta = opts.delta_factor * eps;

  ClimbState state;
  state.positions = data.points();
  state.iterations.assign(n, 0);
  state.reached_density.assign(n, false);
  state.fixed_point.assign(n, false);
  if (opts.record_paths) state.paths.resize(n);

  Eigen::RowVectorXd x, next;
  for (std::size_t i = 0; i < n; ++i) {
    x = data.point(i);
    if (opts.record_paths) state.paths[i].push_back(x);
    for (int scans = 0; scans < opts.max_iters; ++scans) {
      const std::size_t count = neighborhood_mean(data, x, eps, next);
      ++state.neighborhood_scans;
      if (min_pts && count >= static_cast<std::size_t>(*min_pts)) {
        state.reached_density[i] = true;
        break;
      }
      if (count == 0) throw EmptyNeighborhood("climb left the support of the data");
      const double step = (next - x).norm();
      if (step <= delta) {
        state.fixed_point[i] = true;
        break;
      }
      x = next;
      ++state.iterations[i];
      if (opts.record_paths) state.paths[i].push_back(x);
    }
    state.positions.row(static_cast<Eigen::Index>(i)) = x;
  }
  return state;
}

namespace {

// eps-components of the climbed positions. Returns raw component ids.
HardAssignment climbed_components(const RowMatrix& positions, double eps, std::size_t& evaluations) {
  const PairwiseDistances d = pairwise_distances(Dataset(positions));
  evaluations += d.evaluations;
  return connected_components_dfs(SimilarityGraph{heaviside_adjacency(d.dist, eps)});
}

}  // namespace

ClusteringReport dbscan_climb(const Dataset& data, const DbscanParams& p, const ClimbOptions& opts) {
  p.validate();
  const ClimbState state = climb(data, p.eps, p.min_pts, opts);

  ClusteringReport report = dbscan_report("dbscan-climb", p);
  report.neighborhood_scans = state.neighborhood_scans;
  for (int it : state.iterations) report.iterations = std::max(report.iterations, it);

  const HardAssignment comps = climbed_components(state.positions, p.eps, report.distance_evaluations);
  const auto sizes = comps.cluster_sizes();
  std::vector<int> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool lone = sizes[static_cast<std::size_t>(comps[i])] == 1;
    labels[i] = lone && !state.reached_density[i] ? kOutlier : comps[i];
  }
  report.labels = canonicalize(HardAssignment(std::move(labels)));
  return report;
}

ClusteringReport mean_shift(const Dataset& data, double eps, const ClimbOptions& opts) {
  const ClimbState state = climb(data, eps, std::nullopt, opts);

  ClusteringReport report;
  report.algorithm = "meanshift";
  report.params = {{"eps", eps}};
  report.neighborhood_scans = state.neighborhood_scans;
  for (std::size_t i = 0; i < data.size(); ++i) {
    report.iterations = std::max(report.iterations, state.iterations[i]);
    if (!state.fixed_point[i]) report.converged = false;
  }

  const HardAssignment comps = climbed_components(state.positions, eps, report.distance_evaluations);
  const auto sizes = comps.cluster_sizes();
  std::vector<int> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    labels[i] = sizes[static_cast<std::size_t>(comps[i])] == 1 ? kOutlier : comps[i];
  }
  report.labels = canonicalize(HardAssignment(std::move(labels)));

  const int k = report.labels.k();
  RowMatrix centers = RowMatrix::Zero(k, static_cast<Eigen::Index>(data.dim()));
  const auto counts = report.labels.cluster_sizes();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (report.labels[i] != kOutlier) centers.row(report.labels[i]) += state.positions.row(static_cast<Eigen::Index>(i));
  }
  for (int c = 0; c < k; ++c) centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  report.centers = std::move(centers);
  return report;
}

}  // namespace unicluster
