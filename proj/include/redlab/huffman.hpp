#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "redlab/distributions.hpp"

namespace redlab {

inline constexpr std::size_t kDummySymbol = std::numeric_limits<std::size_t>::max();

struct CodeNode {
  double prob = 0.0;
  std::size_t symbol = kDummySymbol;  // leaves only; dummies keep the sentinel
  std::vector<std::size_t> children;  // in merge order, smallest first

  bool is_leaf() const noexcept { return children.empty(); }
  bool is_dummy() const noexcept { return is_leaf() && symbol == kDummySymbol; }
};

// Internal node address: depth from the root and left-to-right position
// among the internal nodes at that depth.
struct NodeRef {
  std::size_t depth = 0;
  std::size_t index = 0;
  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

// D-ary Huffman tree. Node ids follow creation order: dummy leaves, then the
// real leaves from the least to the most probable symbol, then internal nodes
// in merge order. The last node is the root.
class CodeTree {
 public:
  CodeTree(ProbabilityMultiset source, int radix, std::vector<CodeNode> nodes);

  int radix() const noexcept { return radix_; }
  const ProbabilityMultiset& source() const noexcept { return source_; }
  std::span<const CodeNode> nodes() const noexcept { return nodes_; }
  const CodeNode& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t root() const noexcept { return nodes_.size() - 1; }
  std::size_t leaf_count() const noexcept;  // includes dummies

  // Depth of every node, indexed by node id.
  const std::vector<std::size_t>& depths() const noexcept { return depths_; }

  // Internal nodes in breadth-first order, root first.
  std::vector<NodeRef> internal_nodes() const;
  std::size_t resolve(NodeRef ref) const;
  NodeRef ref_of(std::size_t id) const;

  // Real symbol indices of the leaves under a node.
  std::vector<std::size_t> symbols_under(std::size_t id) const;

  // Exact Kraft equality via bottom-up integer carries: at every level the
  // node count must be a multiple of the radix, ending in a single root.
  bool kraft_holds() const;

  // Sum and padding invariants of the tree (tolerance 1e-9).
  bool well_formed() const;

 private:
  ProbabilityMultiset source_;
  int radix_;
  std::vector<CodeNode> nodes_;
  std::vector<std::size_t> depths_;
  std::vector<std::vector<std::size_t>> internal_by_depth_;
};

using CodeLengths = std::vector<std::size_t>;

// Number of zero-probability dummies needed so the leaf count is 1 mod D-1.
// A single-symbol source is padded up to D leaves so its codeword has
// length one.
std::size_t dummy_count(std::size_t symbols, int radix);

// Ties are broken by creation order (earliest first).
CodeTree build_huffman(const ProbabilityMultiset& dist, int radix = 2);

// Per-symbol codeword lengths aligned with dist order; dummies omitted.
CodeLengths code_lengths(const CodeTree& tree);

// Sum of u_i l_i. Cross-checked against the sum of internal node
// probabilities; a mismatch throws std::logic_error.
double average_length(const CodeTree& tree);

double redundancy(const ProbabilityMultiset& dist, int radix = 2);
double redundancy(const CodeTree& tree);

}  // namespace redlab
