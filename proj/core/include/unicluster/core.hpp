#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "unicluster/errors.hpp"

namespace unicluster {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kOutlier = -1;

/// n points in d dimensions, one per row, with optional ground-truth labels.
/// Immutable once built.
class Dataset {
 public:
  explicit Dataset(RowMatrix points, std::optional<std::vector<int>> labels = std::nullopt);

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }

  const RowMatrix& points() const { return points_; }
  auto point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)); }

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<int>& labels() const;

  Dataset with_labels(std::vector<int> labels) const;
  Dataset without_labels() const { return Dataset(points_); }

 private:
  RowMatrix points_;
  std::optional<std::vector<int>> labels_;
};

/// Hard cluster membership. Ids are kOutlier or in [0, k).
class HardAssignment {
 public:
  HardAssignment() = default;
  /// k defaults to 1 + the largest id present.
  explicit HardAssignment(std::vector<int> cluster_of, std::optional<int> k = std::nullopt);

  std::size_t size() const { return cluster_of_.size(); }
  int k() const { return k_; }
  int operator[](std::size_t i) const { return cluster_of_[i]; }
  const std::vector<int>& cluster_of() const { return cluster_of_; }

  std::size_t outlier_count() const;
  std::vector<std::size_t> cluster_sizes() const;

  friend bool operator==(const HardAssignment& a, const HardAssignment& b) {
    return a.cluster_of_ == b.cluster_of_;
  }

 private:
  std::vector<int> cluster_of_;
  int k_ = 0;
};

/// Row-stochastic n x k responsibility matrix.
class SoftAssignment {
 public:
  SoftAssignment() = default;
  /// Validates entries in [0,1] and unit row sums (1e-9).
  explicit SoftAssignment(Matrix resp);

  std::size_t size() const { return static_cast<std::size_t>(resp_.rows()); }
  int k() const { return static_cast<int>(resp_.cols()); }
  const Matrix& resp() const { return resp_; }
  double operator()(std::size_t i, int c) const {
    return resp_(static_cast<Eigen::Index>(i), c);
  }

 private:
  Matrix resp_;
};

struct RunConfig {
  std::uint64_t seed = 0;
  int max_iters = 300;
  double tol = 1e-6;

  void validate() const;
};

/// Relabel ids by order of first appearance; outliers stay kOutlier.
HardAssignment canonicalize(const HardAssignment& a);

/// Row-wise argmax, ties toward the lowest index.
HardAssignment harden(const SoftAssignment& s);

/// Index of the largest entry; the first one wins ties.
std::size_t argmax(std::span<const double> values);
std::size_t argmin(std::span<const double> values);

}  // namespace unicluster
