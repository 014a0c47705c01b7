#include "unicluster/kernels.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "unicluster/rng.hpp"

namespace unicluster {

KernelSpec KernelSpec::gaussian(double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian kernel needs sigma > 0");
  KernelSpec s;
  s.kind = KernelKind::kGaussian;
  s.sigma = sigma;
  return s;
}

KernelSpec KernelSpec::polynomial(double offset, double degree) {
  if (!(degree >= 1.0)) throw InvalidArgument("polynomial kernel needs degree >= 1");
  KernelSpec s;
  s.kind = KernelKind::kPolynomial;
  s.offset = offset;
  s.degree = degree;
  return s;
}

KernelSpec KernelSpec::heaviside(double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("heaviside kernel needs eps > 0");
  KernelSpec s;
  s.kind = KernelKind::kHeaviside;
  s.radius = radius;
  return s;
}

std::string KernelSpec::name() const {
  switch (kind) {
    case KernelKind::kGaussian: return "gaussian";
    case KernelKind::kPolynomial: return "polynomial";
    case KernelKind::kHeaviside: return "heaviside";
    case KernelKind::kLinear: return "linear";
  }
  return "unknown";
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                   const Eigen::Ref<const Eigen::RowVectorXd>& y) {
  if (x.size() != y.size()) throw LengthMismatch("kernel_eval: dimension mismatch");
  switch (spec.kind) {
    case KernelKind::kGaussian:
      return std::exp(-(x - y).squaredNorm() / (2.0 * spec.sigma * spec.sigma));
    case KernelKind::kPolynomial:
      return std::pow(x.dot(y) + spec.offset, spec.degree);
    case KernelKind::kHeaviside:
      return (x - y).norm() <= spec.radius ? 1.0 : 0.0;
    case KernelKind::kLinear:
      return x.dot(y);
  }
  return 0.0;
}

KernelMatrix kernel_matrix(const KernelSpec& spec, const Dataset& data) {
  const auto n = static_cast<Eigen::Index>(data.size());
  Matrix k(n, n);
  std::size_t evals = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = kernel_eval(spec, data.points().row(i), data.points().row(j));
      k(i, j) = v;
      k(j, i) = v;
      ++evals;
    }
  }
  return KernelMatrix{SymMatrix(std::move(k)), spec, evals};
}

WkkState::WkkState(const SymMatrix& kernel, const Vector& weights, HardAssignment assignment)
    : weights_(weights), assignment_(std::move(assignment)) {
  const auto n = kernel.order();
  if (weights_.size() != n || static_cast<Eigen::Index>(assignment_.size()) != n) {
    throw LengthMismatch("wkk: kernel, weights and assignment sizes disagree");
  }
  const int k = assignment_.k();
  cluster_weight_ = Vector::Zero(k);
  pairwise_term_ = Vector::Zero(k);
  // Column c of wu holds w_j for members of c.
  Matrix wu = Matrix::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = assignment_[static_cast<std::size_t>(i)];
    if (c == kOutlier) throw InvalidArgument("wkk: outliers are not allowed");
    wu(i, c) = weights_(i);
    cluster_weight_(c) += weights_(i);
  }
  const Matrix kwu = kernel.matrix() * wu;
  for (int c = 0; c < k; ++c) {
    const double s = cluster_weight_(c);
    pairwise_term_(c) = s > 0.0 ? wu.col(c).dot(kwu.col(c)) / (s * s) : 0.0;
  }
}

double wkk_point_distance(const SymMatrix& kernel, const WkkState& state, std::size_t i, int c) {
  const double s = state.cluster_weight()(c);
  if (!(s > 0.0)) throw EmptyCluster("wkk: cluster " + std::to_string(c) + " has zero weight");
  const auto ii = static_cast<Eigen::Index>(i);
  double cross = 0.0;
  const auto& a = state.assignment();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == c) cross += state.weights()(static_cast<Eigen::Index>(j)) * kernel(ii, static_cast<Eigen::Index>(j));
  }
  return kernel(ii, ii) - 2.0 * cross / s + state.pairwise_term()(c);
}

namespace {

// All point-to-implicit-centroid distances, n x k. Empty clusters get +inf.
Matrix all_distances(const SymMatrix& kernel, const WkkState& state) {
  const auto n = kernel.order();
  const int k = state.assignment().k();
  Matrix wu = Matrix::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    wu(i, state.assignment()[static_cast<std::size_t>(i)]) = state.weights()(i);
  }
  const Matrix cross = kernel.matrix() * wu;
  Matrix dist(n, k);
  for (int c = 0; c < k; ++c) {
    const double s = state.cluster_weight()(c);
    if (!(s > 0.0)) {
      dist.col(c).setConstant(std::numeric_limits<double>::infinity());
      continue;
    }
    dist.col(c) = kernel.matrix().diagonal() - 2.0 * cross.col(c) / s +
                  Vector::Constant(n, state.pairwise_term()(c));
  }
  return dist;
}

double state_objective(const SymMatrix& kernel, const WkkState& state) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < kernel.order(); ++i) total += state.weights()(i) * kernel(i, i);
  const Vector& s = state.cluster_weight();
  for (Eigen::Index c = 0; c < s.size(); ++c) total -= s(c) * state.pairwise_term()(c);
  return total;
}

}  // namespace

double wkk_objective(const SymMatrix& kernel, const Vector& weights, const HardAssignment& assignment) {
  return state_objective(kernel, WkkState(kernel, weights, assignment));
}

WkkResult wkk_fit(const SymMatrix& kernel, const Vector& weights, int k, const RunConfig& cfg,
                  const HardAssignment& init) {
  cfg.validate();
  if (k < 1) throw InvalidArgument("wkk_fit: k must be >= 1");
  if (init.k() != k) throw InvalidArgument("wkk_fit: initial assignment has wrong k");
  WkkState state(kernel, weights, init);
  for (int c = 0; c < k; ++c) {
    if (!(state.cluster_weight()(c) > 0.0)) {
      throw EmptyCluster("wkk_fit: initial cluster " + std::to_string(c) + " is empty");
    }
  }

  WkkResult out;
  out.history.push_back(init);
  out.objective_trace.push_back(state_objective(kernel, state));
  const auto n = static_cast<std::size_t>(kernel.order());

  while (out.iterations < cfg.max_iters) {
    const Matrix dist = all_distances(kernel, state);
    ++out.iterations;
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = dist.row(static_cast<Eigen::Index>(i));
      int best = 0;
      for (int c = 1; c < k; ++c) {
        if (row(c) < row(best)) best = c;
      }
      next[i] = best;
    }

    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int c : next) ++sizes[static_cast<std::size_t>(c)];
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) continue;
      double far = -1.0;
      std::optional<std::size_t> far_i;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[static_cast<std::size_t>(next[i])] < 2) continue;
        const double dd = dist(static_cast<Eigen::Index>(i), next[i]);
        if (dd > far) {
          far = dd;
          far_i = i;
        }
      }
      if (!far_i) break;
      --sizes[static_cast<std::size_t>(next[*far_i])];
      next[*far_i] = c;
      ++sizes[static_cast<std::size_t>(c)];
    }

    HardAssignment assignment(std::move(next), k);
    if (assignment == state.assignment()) {
      out.converged = true;
      break;
    }
    state = WkkState(kernel, weights, assignment);
    out.objective_trace.push_back(state_objective(kernel, state));
    out.history.push_back(std::move(assignment));
  }
  out.assignment = state.assignment();
  return out;
}

HardAssignment balanced_partition(std::size_t n, int k, std::uint64_t seed) {
  if (k < 1 || n < static_cast<std::size_t>(k)) throw InvalidArgument("balanced_partition: need 1 <= k <= n");
  Rng rng(seed);
  const auto perm = rng.permutation(n);
  std::vector<int> out(n);
  for (std::size_t r = 0; r < n; ++r) out[perm[r]] = static_cast<int>(r % static_cast<std::size_t>(k));
  return HardAssignment(std::move(out), k);
}

WkkResult wkk_fit_best_of(const SymMatrix& kernel, const Vector& weights, int k,
                          const RunConfig& cfg, int restarts) {
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  std::optional<WkkResult> best;
  for (int r = 0; r < restarts; ++r) {
    RunConfig run = cfg;
    run.seed = cfg.seed + static_cast<std::uint64_t>(r);
    const auto init = balanced_partition(static_cast<std::size_t>(kernel.order()), k, run.seed);
    WkkResult res = wkk_fit(kernel, weights, k, run, init);
    if (!best || res.objective_trace.back() < best->objective_trace.back()) best = std::move(res);
  }
  return std::move(*best);
}

Matrix weighted_assignment_matrix(const Vector& weights, const HardAssignment& assignment) {
  const auto n = weights.size();
  if (static_cast<Eigen::Index>(assignment.size()) != n) {
    throw LengthMismatch("assignment matrix: weights and assignment sizes disagree");
  }
  const int k = assignment.k();
  Vector s = Vector::Zero(k);
  for (Eigen::Index i = 0; i < n; ++i) s(assignment[static_cast<std::size_t>(i)]) += weights(i);
  Matrix y = Matrix::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = assignment[static_cast<std::size_t>(i)];
    if (s(c) > 0.0) y(i, c) = std::sqrt(weights(i) / s(c));
  }
  return y;
}

double wkk_trace_objective(const SymMatrix& kernel, const Vector& weights,
                           const HardAssignment& assignment) {
  const Matrix y = weighted_assignment_matrix(weights, assignment);
  const double orth = (y.transpose() * y - Matrix::Identity(y.cols(), y.cols())).cwiseAbs().maxCoeff();
  if (!(orth <= 1e-10)) {
    throw InvalidArgument("assignment matrix is not orthonormal (empty or zero-weight cluster?)");
  }
  const Vector root = weights.cwiseSqrt();
  const Matrix scaled = root.asDiagonal() * kernel.matrix() * root.asDiagonal();
  return (y.transpose() * scaled * y).trace();
}

}  // namespace unicluster
