#ifndef TROPCA_PHYLO_HPP
#define TROPCA_PHYLO_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tropca/trop_core.hpp"

namespace tropca {

struct PhyloNode {
  int parent = -1;
  std::vector<int> children;
  std::string label;    // nonempty on leaves
  double length = 0.0;  // branch above this node; 0 at the root
};

/// Rooted tree with labeled leaves and edge lengths. Internal vertices have
/// at least two children; unary chains are rejected at parse time.
class PhyloTree {
 public:
  PhyloTree(std::vector<PhyloNode> nodes, int root, bool missing_lengths);

  const std::vector<PhyloNode>& nodes() const { return nodes_; }
  const PhyloNode& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
  int root() const { return root_; }
  int leaf_count() const { return leaf_count_; }
  /// True when the source text omitted some branch length (defaulted to 0).
  bool missing_lengths() const { return missing_lengths_; }

  std::vector<int> leaves() const;                  // node ids
  std::vector<std::string> sorted_leaf_labels() const;
  /// Distance from the root to node i along branch lengths.
  double depth(int i) const;

 private:
  std::vector<PhyloNode> nodes_;
  int root_;
  int leaf_count_;
  bool missing_lengths_;
};

struct NewickError : std::runtime_error {
  NewickError(size_t offset, const std::string& what)
      : std::runtime_error("newick parse error at byte " +
                           std::to_string(offset) + ": " + what),
        offset(offset) {}
  size_t offset;
};

/// Parse a single Newick tree (trailing semicolon required). Missing branch
/// lengths default to 0 and set the tree's missing_lengths flag.
PhyloTree parse_newick(std::string_view text);

/// Newick text with branch lengths in shortest round-trip form.
std::string emit_newick(const PhyloTree& t);

/// Lexicographic (i, j), i < j indexing of leaf pairs.
class PairIndexer {
 public:
  explicit PairIndexer(int m);
  /// Leaf count recovered from a C(m,2)-dimensional vector.
  static int leaves_for_dimension(int e);

  int m() const { return m_; }
  int dim() const { return m_ * (m_ - 1) / 2; }
  int index(int i, int j) const;  // i != j, order-free
  std::pair<int, int> pair(int idx) const;

 private:
  int m_;
};

/// Cophenetic vector of a tree: leaf-to-leaf path lengths over the
/// lexicographic pair order of the sorted leaf labels. Raw distances are
/// kept (no torus normalization) so the ultrametric test stays meaningful.
struct UltraPoint {
  TropPoint point;
  std::vector<std::string> leaf_order;
  bool ultrametric = false;
};

UltraPoint cophenetic_vector(const PhyloTree& t);

/// True iff for every leaf triple the maximum of the three pairwise values
/// is attained at least twice within tol.
bool is_ultrametric(std::span<const double> x, double tol = kTieTol);
bool is_ultrametric(const TropPoint& x, double tol = kTieTol);

/// Equidistant tree realizing an ultrametric: clusters merge in increasing
/// distance order at height d/2. Near-ties merge smallest label first.
PhyloTree ultrametric_to_tree(std::span<const double> x,
                              std::span<const std::string> leaf_order,
                              double tol = kTieTol);
PhyloTree ultrametric_to_tree(const UltraPoint& u, double tol = kTieTol);

/// Branch-length-free canonical form: children ordered by smallest leaf
/// label, recursively.
struct TopologySignature {
  std::string canonical_newick;
  auto operator<=>(const TopologySignature&) const = default;
};

TopologySignature topology_signature(const PhyloTree& t);

/// True iff some internal node's leaf set is exactly {a, b}.
bool has_cherry(const PhyloTree& t, const std::string& a, const std::string& b);

/// Frequency table of topologies, most frequent first (signature string as
/// the tiebreak). Input points must share a leaf set and be ultrametric.
std::vector<std::pair<TopologySignature, int>> topology_tally(
    std::span<const UltraPoint> points);
std::vector<std::pair<TopologySignature, int>> topology_tally(
    std::span<const PhyloTree> trees);

}  // namespace tropca

#endif  // TROPCA_PHYLO_HPP
