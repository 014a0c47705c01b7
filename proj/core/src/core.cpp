#include "unicluster/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace unicluster {

Dataset::Dataset(RowMatrix points, std::optional<std::vector<int>> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw InvalidArgument("dataset needs n >= 1 points of dimension d >= 1");
  }
  if (labels_ && labels_->size() != size()) {
    throw LengthMismatch("dataset has " + std::to_string(size()) + " points but " +
                         std::to_string(labels_->size()) + " labels");
  }
}

const std::vector<int>& Dataset::labels() const {
  if (!labels_) throw InvalidArgument("dataset carries no labels");
  return *labels_;
}

Dataset Dataset::with_labels(std::vector<int> labels) const {
  return Dataset(points_, std::move(labels));
}

HardAssignment::HardAssignment(std::vector<int> cluster_of, std::optional<int> k)
    : cluster_of_(std::move(cluster_of)) {
  int max_id = kOutlier;
  for (int id : cluster_of_) {
    if (id < kOutlier) throw InvalidArgument("cluster id below -1: " + std::to_string(id));
    max_id = std::max(max_id, id);
  }
  k_ = k.value_or(max_id + 1);
  if (max_id >= k_) {
    throw InvalidArgument("cluster id " + std::to_string(max_id) + " not below k = " +
                          std::to_string(k_));
  }
}

std::size_t HardAssignment::outlier_count() const {
  return static_cast<std::size_t>(std::count(cluster_of_.begin(), cluster_of_.end(), kOutlier));
}

std::vector<std::size_t> HardAssignment::cluster_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
  for (int id : cluster_of_) {
    if (id != kOutlier) ++sizes[static_cast<std::size_t>(id)];
  }
  return sizes;
}

SoftAssignment::SoftAssignment(Matrix resp) : resp_(std::move(resp)) {
  for (Eigen::Index i = 0; i < resp_.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < resp_.cols(); ++c) {
      const double v = resp_(i, c);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidArgument("responsibility outside [0,1] in row " + std::to_string(i));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvalidArgument("responsibility row " + std::to_string(i) + " sums to " +
                            std::to_string(sum));
    }
  }
}

void RunConfig::validate() const {
  if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
}

HardAssignment canonicalize(const HardAssignment& a) {
  std::unordered_map<int, int> relabel;
  std::vector<int> out;
  out.reserve(a.size());
  for (int id : a.cluster_of()) {
    if (id == kOutlier) {
      out.push_back(kOutlier);
      continue;
    }
    auto [it, inserted] = relabel.try_emplace(id, static_cast<int>(relabel.size()));
    out.push_back(it->second);
  }
  return HardAssignment(std::move(out), static_cast<int>(relabel.size()));
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return best;
}

std::size_t argmin(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] < values[best]) best = j;
  }
  return best;
}

HardAssignment harden(const SoftAssignment& s) {
  const Matrix& r = s.resp();
  std::vector<int> out(s.size());
  std::vector<double> row(static_cast<std::size_t>(r.cols()));
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index c = 0; c < r.cols(); ++c) row[static_cast<std::size_t>(c)] = r(i, c);
    out[static_cast<std::size_t>(i)] = static_cast<int>(argmax(row));
  }
  return HardAssignment(std::move(out), s.k());
}

}  // namespace unicluster
