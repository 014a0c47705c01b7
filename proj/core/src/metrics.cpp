#include "unicluster/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace unicluster {

namespace {

std::vector<int> dense_ids(const HardAssignment& a, int& count) {
  std::unordered_map<int, int> ids;
  std::vector<int> out;
  out.reserve(a.size());
  for (int v : a.cluster_of()) {
    auto [it, inserted] = ids.try_emplace(v, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  count = static_cast<int>(ids.size());
  return out;
}

void check_lengths(const HardAssignment& a, const HardAssignment& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("partitions have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                         " points");
  }
}

// Both scores are computed on a fixed ordering of the pair so that swapping
// the arguments replays identical arithmetic.
std::pair<std::vector<int>, std::vector<int>> ordered_pair(const HardAssignment& a, const HardAssignment& b) {
  int ka = 0, kb = 0;
  auto da = dense_ids(a, ka);
  auto db = dense_ids(b, kb);
  if (db < da) std::swap(da, db);
  return {std::move(da), std::move(db)};
}

ContingencyTable table_of(const std::vector<int>& a, const std::vector<int>& b) {
  const int r = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
  const int s = b.empty() ? 0 : *std::max_element(b.begin(), b.end()) + 1;
  ContingencyTable t;
  t.counts = Eigen::MatrixXi::Zero(r, s);
  t.row_sums.assign(static_cast<std::size_t>(r), 0);
  t.col_sums.assign(static_cast<std::size_t>(s), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++t.counts(a[i], b[i]);
    ++t.row_sums[static_cast<std::size_t>(a[i])];
    ++t.col_sums[static_cast<std::size_t>(b[i])];
  }
  t.n = static_cast<long long>(a.size());
  return t;
}

double pairs(long long m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); }

void check_size(const HardAssignment& a) {
  if (a.size() < 2) throw InvalidArgument("agreement scores need n >= 2");
}

double entropy(const std::vector<long long>& sums, double n) {
  double h = 0.0;
  for (long long c : sums) {
    if (c > 0) {
      const double p = static_cast<double>(c) / n;
      h -= p * std::log(p);
    }
  }
  return h;
}

}  // namespace

ContingencyTable contingency(const HardAssignment& a, const HardAssignment& b) {
  check_lengths(a, b);
  int ka = 0, kb = 0;
  return table_of(dense_ids(a, ka), dense_ids(b, kb));
}

double ari(const HardAssignment& a, const HardAssignment& b) {
  check_lengths(a, b);
  check_size(a);
  const auto [da, db] = ordered_pair(a, b);
  const ContingencyTable t = table_of(da, db);

  double index = 0.0;
  for (Eigen::Index u = 0; u < t.counts.rows(); ++u) {
    for (Eigen::Index v = 0; v < t.counts.cols(); ++v) index += pairs(t.counts(u, v));
  }
  double sum_a = 0.0, sum_b = 0.0;
  for (long long c : t.row_sums) sum_a += pairs(c);
  for (long long c : t.col_sums) sum_b += pairs(c);
  const double expected = sum_a * sum_b / pairs(t.n);
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return da == db ? 1.0 : 0.0;
  return (index - expected) / (max_index - expected);
}

double ami(const HardAssignment& a, const HardAssignment& b) {
  check_lengths(a, b);
  check_size(a);
  const auto [da, db] = ordered_pair(a, b);
  if (da == db) return 1.0;
  const ContingencyTable t = table_of(da, db);
  const double n = static_cast<double>(t.n);

  double mi = 0.0;
  for (Eigen::Index u = 0; u < t.counts.rows(); ++u) {
    for (Eigen::Index v = 0; v < t.counts.cols(); ++v) {
      const double nuv = t.counts(u, v);
      if (nuv == 0.0) continue;
      const double au = static_cast<double>(t.row_sums[static_cast<std::size_t>(u)]);
      const double bv = static_cast<double>(t.col_sums[static_cast<std::size_t>(v)]);
      mi += nuv / n * std::log(n * nuv / (au * bv));
    }
  }

  // E[MI] = sum_uv sum_nij (nij/n) log(n nij / (a b)) P(nij | a, b, n).
  const double lg_n = std::lgamma(n + 1.0);
  double emi = 0.0;
  for (long long ai : t.row_sums) {
    for (long long bj : t.col_sums) {
      const double x = static_cast<double>(ai), y = static_cast<double>(bj);
      const double base = std::lgamma(x + 1.0) + std::lgamma(y + 1.0) + std::lgamma(n - x + 1.0) +
                          std::lgamma(n - y + 1.0) - lg_n;
      const long long lo = std::max(1LL, ai + bj - t.n);
      const long long hi = std::min(ai, bj);
      for (long long m = lo; m <= hi; ++m) {
        const double k = static_cast<double>(m);
        const double log_p = base - std::lgamma(k + 1.0) - std::lgamma(x - k + 1.0) - std::lgamma(y - k + 1.0) -
                             std::lgamma(n - x - y + k + 1.0);
        emi += k / n * std::log(n * k / (x * y)) * std::exp(log_p);
      }
    }
  }

  const double norm = std::max(entropy(t.row_sums, n), entropy(t.col_sums, n));
  const double denom = norm - emi;
  if (std::abs(denom) <= 1e-15) return 0.0;
  return (mi - emi) / denom;
}

}  // namespace unicluster
