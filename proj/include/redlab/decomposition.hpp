#pragma once

#include <cstddef>

#include "redlab/distributions.hpp"
#include "redlab/huffman.hpp"

namespace redlab {

// Split of a Huffman tree at internal node u: `upper` is the source with the
// subtree under u collapsed into one symbol of probability u, `lower` is the
// subtree's leaf distribution rescaled by 1/u.
struct Decomposition {
  double u = 0.0;
  ProbabilityMultiset upper;
  ProbabilityMultiset lower;
};

Decomposition decompose(const CodeTree& tree, NodeRef node);

// Collapses every binary Huffman subtree that does not contain the symbol p
// into a single leaf, shallowest first (larger u on ties), until each
// internal node has p below it.
ProbabilityMultiset canonicalize(const ProbabilityMultiset& dist, double p);

// Replaces element `index` (descending order) by two halves.
ProbabilityMultiset split_leaf(const ProbabilityMultiset& dist, std::size_t index);

}  // namespace redlab
