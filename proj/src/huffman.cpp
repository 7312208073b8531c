#include "redlab/huffman.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

#include "redlab/error.hpp"

namespace redlab {

namespace {

void check_radix(int radix) {
  if (radix < 2) throw Error(ErrorCode::BadRadix, "radix must be at least 2");
}

}  // namespace

std::size_t dummy_count(std::size_t symbols, int radix) {
  check_radix(radix);
  const std::size_t d1 = static_cast<std::size_t>(radix) - 1;
  if (symbols == 1) return d1;
  const std::size_t rem = (symbols - 1) % d1;
  return rem == 0 ? 0 : d1 - rem;
}

CodeTree::CodeTree(ProbabilityMultiset source, int radix,
                   std::vector<CodeNode> nodes)
    : source_(std::move(source)), radix_(radix), nodes_(std::move(nodes)) {
  depths_.assign(nodes_.size(), 0);
  std::vector<std::size_t> frontier{root()};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    std::vector<std::size_t> level;
    for (std::size_t id : frontier) {
      if (nodes_[id].is_leaf()) continue;
      level.push_back(id);
      for (std::size_t c : nodes_[id].children) {
        depths_[c] = depths_[id] + 1;
        next.push_back(c);
      }
    }
    if (!level.empty()) internal_by_depth_.push_back(std::move(level));
    frontier = std::move(next);
  }
}

std::size_t CodeTree::leaf_count() const noexcept {
  std::size_t n = 0;
  for (const auto& node : nodes_) n += node.is_leaf() ? 1 : 0;
  return n;
}

std::vector<NodeRef> CodeTree::internal_nodes() const {
  std::vector<NodeRef> refs;
  for (std::size_t d = 0; d < internal_by_depth_.size(); ++d) {
    for (std::size_t i = 0; i < internal_by_depth_[d].size(); ++i) {
      refs.push_back({d, i});
    }
  }
  return refs;
}

std::size_t CodeTree::resolve(NodeRef ref) const {
  if (ref.depth >= internal_by_depth_.size() ||
      ref.index >= internal_by_depth_[ref.depth].size()) {
    throw Error(ErrorCode::NotInternal, "no internal node at depth " +
                                            std::to_string(ref.depth) +
                                            ", index " + std::to_string(ref.index));
  }
  return internal_by_depth_[ref.depth][ref.index];
}

NodeRef CodeTree::ref_of(std::size_t id) const {
  const std::size_t d = depths_.at(id);
  if (!nodes_[id].is_leaf() && d < internal_by_depth_.size()) {
    const auto& level = internal_by_depth_[d];
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (level[i] == id) return {d, i};
    }
  }
  throw Error(ErrorCode::NotInternal,
              "node " + std::to_string(id) + " is not internal");
}

std::vector<std::size_t> CodeTree::symbols_under(std::size_t id) const {
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{id};
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    const auto& node = nodes_.at(n);
    if (node.is_leaf()) {
      if (!node.is_dummy()) out.push_back(node.symbol);
    } else {
      stack.insert(stack.end(), node.children.rbegin(), node.children.rend());
    }
  }
  return out;
}

bool CodeTree::kraft_holds() const {
  std::size_t max_depth = 0;
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].is_leaf()) max_depth = std::max(max_depth, depths_[id]);
  }
  std::vector<std::size_t> leaves_at(max_depth + 1, 0);
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].is_leaf()) ++leaves_at[depths_[id]];
  }
  const auto d = static_cast<std::size_t>(radix_);
  std::size_t carry = 0;
  for (std::size_t level = max_depth; level > 0; --level) {
    const std::size_t count = leaves_at[level] + carry;
    if (count % d != 0) return false;
    carry = count / d;
  }
  return leaves_at[0] + carry == 1;
}

bool CodeTree::well_formed() const {
  constexpr double tol = 1e-9;
  if (std::abs(nodes_[root()].prob - 1.0) > tol) return false;
  for (const auto& node : nodes_) {
    if (node.is_leaf()) continue;
    if (node.children.size() != static_cast<std::size_t>(radix_)) return false;
    double sum = 0.0;
    for (std::size_t c : node.children) sum += nodes_[c].prob;
    if (std::abs(sum - node.prob) > tol) return false;
  }
  const std::size_t d1 = static_cast<std::size_t>(radix_) - 1;
  return (leaf_count() - 1) % d1 == 0;
}

CodeTree build_huffman(const ProbabilityMultiset& dist, int radix) {
  check_radix(radix);
  const std::size_t n = dist.size();
  const std::size_t dummies = dummy_count(n, radix);

  std::vector<CodeNode> nodes;
  nodes.reserve(2 * (n + dummies));
  for (std::size_t i = 0; i < dummies; ++i) nodes.push_back({0.0, kDummySymbol, {}});
  for (std::size_t i = n; i-- > 0;) nodes.push_back({dist[i], i, {}});

  // (probability, creation id): equal probabilities pop oldest first.
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (std::size_t id = 0; id < nodes.size(); ++id) queue.emplace(nodes[id].prob, id);

  const auto d = static_cast<std::size_t>(radix);
  while (queue.size() > 1) {
    CodeNode parent;
    for (std::size_t k = 0; k < d; ++k) {
      const auto [prob, id] = queue.top();
      queue.pop();
      parent.prob += prob;
      parent.children.push_back(id);
    }
    queue.emplace(parent.prob, nodes.size());
    nodes.push_back(std::move(parent));
  }
  return CodeTree(dist, radix, std::move(nodes));
}

CodeLengths code_lengths(const CodeTree& tree) {
  CodeLengths lengths(tree.source().size(), 0);
  const auto nodes = tree.nodes();
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (nodes[id].is_leaf() && !nodes[id].is_dummy()) {
      lengths[nodes[id].symbol] = tree.depths()[id];
    }
  }
  return lengths;
}

double average_length(const CodeTree& tree) {
  const auto lengths = code_lengths(tree);
  double by_symbols = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    by_symbols += tree.source()[i] * static_cast<double>(lengths[i]);
  }
  double by_internal = 0.0;
  for (const auto& node : tree.nodes()) {
    if (!node.is_leaf()) by_internal += node.prob;
  }
  if (std::abs(by_symbols - by_internal) > 1e-9) {
    throw std::logic_error("average length mismatch between symbol and node sums");
  }
  return by_symbols;
}

double redundancy(const CodeTree& tree) {
  return average_length(tree) - entropy(tree.source(), tree.radix());
}

double redundancy(const ProbabilityMultiset& dist, int radix) {
  return redundancy(build_huffman(dist, radix));
}

}  // namespace redlab
