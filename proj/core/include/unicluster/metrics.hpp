#pragma once

#include <vector>

#include "unicluster/core.hpp"

namespace unicluster {

/// r x s counts n_uv of points with label u in a and v in b. Rows and columns
/// follow the order of first appearance; kOutlier is an ordinary label here.
struct ContingencyTable {
  Eigen::MatrixXi counts;
  std::vector<long long> row_sums;
  std::vector<long long> col_sums;
  long long n = 0;
};

/// Throws LengthMismatch on unequal lengths.
ContingencyTable contingency(const HardAssignment& a, const HardAssignment& b);

/// Adjusted Rand index. When the maximum index equals its expectation the
/// score is 1 for identical partitions and 0 otherwise.
double ari(const HardAssignment& a, const HardAssignment& b);

/// Adjusted mutual information, max(H(a), H(b)) normaliser, exact expected
/// MI under the hypergeometric model. Same degenerate rule as ari.
double ami(const HardAssignment& a, const HardAssignment& b);

}  // namespace unicluster
