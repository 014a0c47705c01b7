#pragma once

#include <vector>

#include "unicluster/core.hpp"
#include "unicluster/linalg.hpp"
#include "unicluster/rng.hpp"

namespace unicluster::test {

inline RowMatrix random_points(std::size_t n, std::size_t d, Rng& rng, double scale = 1.0) {
  RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = scale * rng.normal();
  return m;
}

inline Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed, double scale = 1.0) {
  Rng rng(seed);
  return Dataset(random_points(n, d, rng, scale));
}

inline SymMatrix random_spd(Eigen::Index m, Rng& rng) {
  Matrix b(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) b(i, j) = rng.normal();
  Matrix a = b * b.transpose() + Matrix::Identity(m, m);
  return SymMatrix(0.5 * (a + a.transpose()));
}

inline std::vector<int> random_labels(std::size_t n, int k, Rng& rng) {
  std::vector<int> out(n);
  for (auto& v : out) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  return out;
}

// Union-find, used as an independent component oracle.
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  // Root ids relabelled by first appearance.
  std::vector<int> labels() {
    std::vector<int> out(parent.size(), -1);
    std::vector<int> id_of(parent.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) {
      const std::size_t r = find(i);
      if (id_of[r] < 0) id_of[r] = next++;
      out[i] = id_of[r];
    }
    return out;
  }
};

// Every set partition of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> all_partitions(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int max_used) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= max_used + 1; ++v) {
      cur[i] = v;
      self(self, i + 1, std::max(max_used, v));
    }
  };
  if (n == 0) return out;
  cur[0] = 0;
  rec(rec, 1, 0);
  return out;
}

}  // namespace unicluster::test
