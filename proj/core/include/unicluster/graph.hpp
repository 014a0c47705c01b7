#pragma once

#include <iosfwd>
#include <vector>

#include "unicluster/core.hpp"
#include "unicluster/kernels.hpp"
#include "unicluster/linalg.hpp"

namespace unicluster {

enum class NodeLabel { kPlain, kCore, kUnprocessed, kOutlier };

/// Weighted undirected graph over n nodes. A is symmetric and non-negative;
/// degrees are always diag(A 1), self-similarity included.
class SimilarityGraph {
 public:
  explicit SimilarityGraph(SymMatrix similarity);

  std::size_t size() const { return static_cast<std::size_t>(a_.order()); }
  const SymMatrix& similarity() const { return a_; }
  const Vector& degree() const { return degree_; }
  const std::vector<NodeLabel>& labels() const { return labels_; }
  void set_labels(std::vector<NodeLabel> labels);

  /// Graph on the listed nodes only; degrees are recomputed from the
  /// surviving edges. Labels carry over.
  SimilarityGraph induced(const std::vector<std::size_t>& nodes) const;

 private:
  SymMatrix a_;
  Vector degree_;
  std::vector<NodeLabel> labels_;
};

/// A = kernel_matrix(spec, data). A heaviside spec gives the adjacency of the
/// eps-graph plus the identity.
SimilarityGraph build_graph(const Dataset& data, const KernelSpec& spec);

/// One-hot partition matrix U and Z = D^{1/2} U (U^T D U)^{-1/2}.
struct CutView {
  Matrix partition;
  Matrix embedding;
};

/// Throws ZeroVolume when a cluster has zero total degree, InvalidArgument
/// if Z^T Z deviates from I by more than 1e-10.
CutView cut_view(const SimilarityGraph& g, const HardAssignment& partition);

/// (1/k) sum_c links(V_c, V \ V_c) / links(V_c, V).
double normlinks_objective(const SimilarityGraph& g, const HardAssignment& partition);

/// Tr(Z^T D^{-1/2} A D^{-1/2} Z); equals k (1 - normlinks_objective).
double cut_trace_objective(const SimilarityGraph& g, const HardAssignment& partition);

/// Components over edges {A_ij > threshold, i != j}; ids follow the order in
/// which components are first reached scanning nodes 0..n-1.
HardAssignment connected_components_dfs(const SimilarityGraph& g, double threshold = 0.0);

/// D^{-1/2} A D^{-1/2}. Throws IsolatedNode when some d_i = 0.
SymMatrix normalized_adjacency(const SimilarityGraph& g);

/// L = D - A.
SymMatrix laplacian(const SimilarityGraph& g);

enum class DegreeMode {
  kWithSelfLoops,  // D = diag(A 1)
  kGraphOnly,      // D_G: degrees of the adjacency without the diagonal of A
};

/// D^{-1/2} L D^{-1/2} for the chosen degree matrix. Throws IsolatedNode when
/// that degree vanishes somewhere.
SymMatrix normalized_laplacian(const SimilarityGraph& g, DegreeMode mode = DegreeMode::kWithSelfLoops);

struct EigenOneComponents {
  HardAssignment components;
  /// Eigenvalues within kEigenOneTolerance of one.
  std::size_t multiplicity = 0;
  Vector eigenvalues;
};

/// Components read off the eigenvalue-one eigenspace of the normalised
/// adjacency: rows of the eigenbasis are normalised to unit length and rows
/// with cosine >= 1 - 1e-6 share a cluster.
EigenOneComponents eigenone_decomposition(const SimilarityGraph& g);
inline HardAssignment eigenone_components(const SimilarityGraph& g) {
  return eigenone_decomposition(g).components;
}

/// Zero eigenvalues (within kEigenOneTolerance) of the normalised Laplacian.
std::size_t laplacian_nullity(const SimilarityGraph& g, DegreeMode mode);

/// "i<TAB>j<TAB>weight" per edge with i < j and A_ij > threshold.
void write_edge_list(std::ostream& out, const SimilarityGraph& g, double threshold = 0.0);

}  // namespace unicluster
