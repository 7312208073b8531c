#pragma once

#include <optional>
#include <string_view>

#include "redlab/distributions.hpp"

namespace redlab {

enum class FamilyId { UpperEps, Backbone, PnFamily1, PnFamily2, DaryBackbone };

std::string_view to_string(FamilyId id) noexcept;

// A generated distribution together with the closed-form redundancy its
// Huffman code is expected to have. `feasible` is false when the requested
// parameters do not yield the canonical tree shape the target assumes; the
// distribution is still returned.
struct ExtremalFamily {
  FamilyId id;
  double p;
  std::optional<double> eps;
  std::optional<int> m;
  int radix;
  ProbabilityMultiset dist;
  bool feasible;
  double target;
};

// ((1-eps)(1-p), p, eps(1-p)); eps in (0, 0.5].
ExtremalFamily upper_family(double p, double eps);

// Closed-form Huffman redundancy of upper_family(p, eps).
double upper_family_redundancy(double p, double eps);

// {x_1..x_m, p} with x_i = (1-p) 2^(m-i) / (2^m - 1). Default depth is the
// witness of r_min(p).
ExtremalFamily backbone(double p, std::optional<int> m = std::nullopt);

// Backbone at depth floor(-log2 p); p is its least element.
ExtremalFamily pN_family_1(double p);

// (1-2p) 2^(m-i) / (2^m - 1) for i = 1..m with m = ceil(-log2 2p), plus
// {p, p}.
ExtremalFamily pN_family_2(double p);

// D-1 copies of (1-p) D^(m-l) / (D^m - 1) per level l = 1..m, plus {p}.
ExtremalFamily dary_backbone(double p, int radix,
                             std::optional<int> m = std::nullopt);

}  // namespace redlab
