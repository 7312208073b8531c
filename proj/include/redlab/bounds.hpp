#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace redlab {

enum class BoundId { RMax, RUb, FP1, RMin, RMinPN, RMinD };

std::string_view to_string(BoundId id) noexcept;

struct BoundValue {
  BoundId id = BoundId::RMax;
  double p = 0.0;
  int radix = 2;
  double value = 0.0;
  std::optional<int> witness_m;
  std::string_view branch;
};

struct Constants {
  double pi0 = 0.0;    // smallest root of 1 + p - H(p) = 1/2
  double pi1 = 0.0;    // root of 3 - 5x - H(2x) = gamma near 0.49
  double gamma = 0.0;  // 4/3 - H(1/3)
  double pi0_gap = 0.0;  // 1 - H(pi0) + pi0/2
  std::vector<double> beta;  // beta[0] = 1, then beta_1, beta_2, ...
};

// Computed once, thread-safe.
const Constants& constants();

// Depth thresholds for the lower bound: the optimal depth m satisfies
// beta(m) <= p <= beta(m - 1). beta(0) = 1.
double beta(int k);

// m p - H_D(p) - (1 - p) log_D(1 - D^-m), the minimum redundancy of the
// depth-m canonical tree for a symbol of probability p.
double canonical_redundancy(double p, int m, int radix = 2);

// Candidate depths floor/ceil of -log_D p, restricted to m >= 1.
std::vector<int> candidate_depths(double p, int radix = 2);

BoundValue r_max(double p);
BoundValue r_ub(double p);
BoundValue f_p1(double p1);
BoundValue r_min(double p);
BoundValue r_min_D(double p, int radix);

// Lower bound when p is the least likely probability, as the minimum of two
// canonical-tree terms. The first term uses depth floor(-log p).
BoundValue r_min_pN(double p);

// Both readings of the first least-likely term plus the second term, for
// comparing against exhaustive search.
struct LeastLikelyTerms {
  int m_floor = 0;
  double first_floor = 0.0;
  int m_ceil = 0;
  double first_ceil = 0.0;
  std::optional<int> m_second;  // absent when 2p >= 1
  std::optional<double> second;
};

LeastLikelyTerms least_likely_terms(double p);

}  // namespace redlab
