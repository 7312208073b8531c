#include "redlab/decomposition.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "redlab/error.hpp"

namespace redlab {

namespace {

// (P minus P_u) plus {u}, by symbol identity rather than value.
ProbabilityMultiset collapse(const CodeTree& tree, std::size_t id,
                             const std::vector<std::size_t>& below) {
  const auto& source = tree.source();
  std::vector<bool> taken(source.size(), false);
  for (std::size_t s : below) taken[s] = true;
  std::vector<double> upper{tree.node(id).prob};
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (!taken[i]) upper.push_back(source[i]);
  }
  return make_distribution(upper);
}

Decomposition decompose_node(const CodeTree& tree, std::size_t id) {
  if (id == tree.root()) {
    throw Error(ErrorCode::RootNode, "cannot decompose at the root");
  }
  const double u = tree.node(id).prob;
  if (!(u > 0.0)) {
    throw Error(ErrorCode::ZeroProbabilityNode,
                "internal node has zero probability");
  }
  const auto below = tree.symbols_under(id);
  std::vector<double> lower;
  lower.reserve(below.size());
  for (std::size_t s : below) lower.push_back(tree.source()[s] / u);
  return {u, collapse(tree, id, below), make_distribution(lower)};
}

}  // namespace

Decomposition decompose(const CodeTree& tree, NodeRef node) {
  return decompose_node(tree, tree.resolve(node));
}

ProbabilityMultiset canonicalize(const ProbabilityMultiset& dist, double p) {
  ProbabilityMultiset current = dist;
  for (;;) {
    const auto p_index = find_index(current, p);
    if (!p_index) {
      throw Error(ErrorCode::MissingSymbol,
                  "distribution does not contain " + std::to_string(p));
    }
    const CodeTree tree = build_huffman(current, 2);

    // Shallowest internal node without p; larger probability wins ties.
    std::optional<std::size_t> pick;
    for (const NodeRef ref : tree.internal_nodes()) {
      const std::size_t id = tree.resolve(ref);
      if (id == tree.root()) continue;
      if (pick && tree.depths()[id] > tree.depths()[*pick]) break;
      const auto below = tree.symbols_under(id);
      if (std::find(below.begin(), below.end(), *p_index) != below.end()) continue;
      if (!pick || tree.node(id).prob > tree.node(*pick).prob) pick = id;
    }
    if (!pick) return current;
    current = collapse(tree, *pick, tree.symbols_under(*pick));
  }
}

ProbabilityMultiset split_leaf(const ProbabilityMultiset& dist, std::size_t index) {
  if (index >= dist.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "leaf index " + std::to_string(index) + " out of range");
  }
  const double q = dist[index];
  if (!(q > 0.0)) throw Error(ErrorCode::ZeroLeaf, "cannot split a zero leaf");
  std::vector<double> values(dist.begin(), dist.end());
  values[index] = q / 2.0;
  values.push_back(q / 2.0);
  return make_distribution(values);
}

}  // namespace redlab
