#include "unicluster/graph.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>

namespace unicluster {

SimilarityGraph::SimilarityGraph(SymMatrix similarity)
    : a_(std::move(similarity)), labels_(static_cast<std::size_t>(a_.order()), NodeLabel::kPlain) {
  if (a_.order() > 0 && a_.matrix().minCoeff() < 0.0) {
    throw InvalidArgument("similarity matrix has negative entries");
  }
  degree_ = a_.matrix().rowwise().sum();
}

void SimilarityGraph::set_labels(std::vector<NodeLabel> labels) {
  if (labels.size() != size()) throw LengthMismatch("node label count != graph order");
  labels_ = std::move(labels);
}

SimilarityGraph SimilarityGraph::induced(const std::vector<std::size_t>& nodes) const {
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Matrix sub(m, m);
  std::vector<NodeLabel> sub_labels;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto src_i = static_cast<Eigen::Index>(nodes[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < m; ++j) {
      sub(i, j) = a_(src_i, static_cast<Eigen::Index>(nodes[static_cast<std::size_t>(j)]));
    }
    sub_labels.push_back(labels_[static_cast<std::size_t>(src_i)]);
  }
  SimilarityGraph out{SymMatrix(std::move(sub))};
  out.set_labels(std::move(sub_labels));
  return out;
}

SimilarityGraph build_graph(const Dataset& data, const KernelSpec& spec) {
  return SimilarityGraph(kernel_matrix(spec, data).values);
}

namespace {

void require_partition(const SimilarityGraph& g, const HardAssignment& p) {
  if (p.size() != g.size()) throw LengthMismatch("partition length != graph order");
  if (p.outlier_count() > 0) throw InvalidArgument("partition must cover every node");
}

// links(V_c, V_c') for all cluster pairs, i.e. U^T A U.
Matrix block_links(const SimilarityGraph& g, const HardAssignment& p) {
  const int k = p.k();
  const Matrix& a = g.similarity().matrix();
  Matrix links = Matrix::Zero(k, k);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      links(p[i], p[j]) += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return links;
}

Vector inverse_sqrt_or_zero(const Vector& v) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) > 0.0 ? 1.0 / std::sqrt(v(i)) : 0.0;
  return out;
}

}  // namespace

CutView cut_view(const SimilarityGraph& g, const HardAssignment& p) {
  require_partition(g, p);
  const auto n = static_cast<Eigen::Index>(g.size());
  const int k = p.k();
  Matrix u = Matrix::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) u(i, p[static_cast<std::size_t>(i)]) = 1.0;

  const Vector& d = g.degree();
  const Vector volume = u.transpose() * d;  // diagonal of U^T D U
  for (int c = 0; c < k; ++c) {
    if (!(volume(c) > 0.0)) throw ZeroVolume("cluster " + std::to_string(c) + " has zero volume");
  }
  const Matrix z = d.cwiseSqrt().asDiagonal() * u * volume.cwiseSqrt().cwiseInverse().asDiagonal();
  const double orth = (z.transpose() * z - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
  if (!(orth <= 1e-10)) throw InvalidArgument("cut embedding is not orthonormal");
  return CutView{std::move(u), z};
}

double normlinks_objective(const SimilarityGraph& g, const HardAssignment& p) {
  require_partition(g, p);
  const Matrix links = block_links(g, p);
  const int k = p.k();
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    const double to_all = links.row(c).sum();
    if (!(to_all > 0.0)) throw ZeroVolume("cluster " + std::to_string(c) + " has zero volume");
    total += (to_all - links(c, c)) / to_all;
  }
  return total / k;
}

double cut_trace_objective(const SimilarityGraph& g, const HardAssignment& p) {
  const CutView view = cut_view(g, p);
  const Vector inv = inverse_sqrt_or_zero(g.degree());
  const Matrix scaled = inv.asDiagonal() * g.similarity().matrix() * inv.asDiagonal();
  return (view.embedding.transpose() * scaled * view.embedding).trace();
}

HardAssignment connected_components_dfs(const SimilarityGraph& g, double threshold) {
  const std::size_t n = g.size();
  const Matrix& a = g.similarity().matrix();
  std::vector<int> comp(n, kOutlier);
  std::vector<std::size_t> stack;
  int next_id = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] != kOutlier) continue;
    comp[start] = next_id;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || comp[v] != kOutlier) continue;
        if (a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) > threshold) {
          comp[v] = next_id;
          stack.push_back(v);
        }
      }
    }
    ++next_id;
  }
  return HardAssignment(std::move(comp), next_id);
}

SymMatrix normalized_adjacency(const SimilarityGraph& g) {
  const Vector& d = g.degree();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0)) throw IsolatedNode("node " + std::to_string(i) + " has zero degree");
  }
  const Vector inv = d.cwiseSqrt().cwiseInverse();
  return SymMatrix(inv.asDiagonal() * g.similarity().matrix() * inv.asDiagonal());
}

SymMatrix laplacian(const SimilarityGraph& g) {
  return SymMatrix(Matrix(g.degree().asDiagonal()) - g.similarity().matrix());
}

SymMatrix normalized_laplacian(const SimilarityGraph& g, DegreeMode mode) {
  Vector d = g.degree();
  if (mode == DegreeMode::kGraphOnly) d -= g.similarity().matrix().diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0)) throw IsolatedNode("node " + std::to_string(i) + " has zero degree");
  }
  const Vector inv = d.cwiseSqrt().cwiseInverse();
  return SymMatrix(inv.asDiagonal() * laplacian(g).matrix() * inv.asDiagonal());
}

EigenOneComponents eigenone_decomposition(const SimilarityGraph& g) {
  const EigenPairs eig = sym_eig(normalized_adjacency(g));
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    if (std::abs(eig.values(j) - 1.0) <= kEigenOneTolerance) cols.push_back(j);
  }
  const auto n = static_cast<Eigen::Index>(g.size());
  const auto m = static_cast<Eigen::Index>(cols.size());
  Matrix rows(n, m);
  for (Eigen::Index j = 0; j < m; ++j) rows.col(j) = eig.vectors.col(cols[static_cast<std::size_t>(j)]);
  rows.rowwise().normalize();

  std::vector<int> comp(static_cast<std::size_t>(n), kOutlier);
  int next_id = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (comp[static_cast<std::size_t>(i)] != kOutlier) continue;
    comp[static_cast<std::size_t>(i)] = next_id;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (comp[static_cast<std::size_t>(j)] == kOutlier && rows.row(i).dot(rows.row(j)) >= 1.0 - 1e-6) {
        comp[static_cast<std::size_t>(j)] = next_id;
      }
    }
    ++next_id;
  }
  return EigenOneComponents{HardAssignment(std::move(comp), next_id), static_cast<std::size_t>(m),
                            eig.values};
}

std::size_t laplacian_nullity(const SimilarityGraph& g, DegreeMode mode) {
  const EigenPairs eig = sym_eig(normalized_laplacian(g, mode));
  std::size_t zeros = 0;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    if (std::abs(eig.values(j)) <= kEigenOneTolerance) ++zeros;
  }
  return zeros;
}

void write_edge_list(std::ostream& out, const SimilarityGraph& g, double threshold) {
  const Matrix& a = g.similarity().matrix();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (!(a(i, j) > threshold)) continue;
      char buf[32];
      const auto end = std::to_chars(buf, buf + sizeof buf, a(i, j)).ptr;
      out << i << '\t' << j << '\t' << std::string_view(buf, static_cast<std::size_t>(end - buf)) << '\n';
    }
  }
}

}  // namespace unicluster
