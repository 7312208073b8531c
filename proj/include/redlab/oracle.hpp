#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "redlab/bounds.hpp"
#include "redlab/distributions.hpp"

namespace redlab {

enum class SearchMode { Min, Max };
enum class Constraint { ContainsP, MinIsP, MaxIsP };

std::string_view to_string(SearchMode mode) noexcept;
std::string_view to_string(Constraint constraint) noexcept;

struct SearchLimits {
  int max_q = 64;
  int max_n = 7;
  std::uint64_t instance_cap = 100'000'000;
};

struct SearchOptions {
  int workers = 0;  // 0: OpenMP default
  SearchLimits limits;
};

// Result of an exhaustive search over multisets {k_i / q} with at most
// n_max parts. The witness holds numerators in descending order; among
// equally extremal instances it has the fewest parts, then is the
// lexicographically smallest.
struct SearchReport {
  SearchMode mode = SearchMode::Min;
  Constraint constraint = Constraint::ContainsP;
  int p_num = 0;
  int q = 0;
  int n_max = 0;
  double redundancy = 0.0;
  std::vector<int> witness;
  std::uint64_t instances = 0;

  ProbabilityMultiset witness_distribution() const;

  friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

// Sum of internal node weights of a binary Huffman tree over integer
// weights given in descending order (average length times the total).
std::int64_t huffman_cost(std::span<const int> descending);

// Binary Huffman redundancy of the grid distribution {k_i / q}.
double grid_redundancy(std::span<const int> descending, int q);

// Parallel search: the space is split by the largest part across workers.
SearchReport search_extremal(int p_num, int q, int n_max, SearchMode mode,
                             Constraint constraint,
                             const SearchOptions& options = {});

// Single-threaded recursive reference; reports match search_extremal.
SearchReport search_extremal_serial(int p_num, int q, int n_max,
                                    SearchMode mode, Constraint constraint,
                                    const SearchLimits& limits = {});

struct KktReport {
  int m = 0;
  std::vector<double> closed_form;
  std::vector<double> numeric;
  double objective_gap = 0.0;
  double max_deviation = 0.0;
  std::size_t iterations = 0;
};

// sum_i alpha_i (i - 1 + log2 alpha_i), the depth-m canonical-tree
// objective.
double kkt_objective(std::span<const double> alpha);

// 2^(m-i) / (2^m - 1), i = 1..m.
std::vector<double> kkt_closed_form(int m);

// Euclidean projection onto {sum = 1, nonincreasing} via a hyperplane shift
// followed by pool-adjacent-violators.
std::vector<double> project_ordered_simplex(std::span<const double> y);

// Projected gradient descent from the uniform point, trial step
// step / sqrt(k) with backtracking. Throws NoConvergence unless both the
// deviation and the objective gap end below 1e-6.
KktReport kkt_verify(int m, std::size_t iterations = 2'000'000, double step = 0.1);

struct JohnsenReport {
  int q = 0;
  int n_max = 0;
  std::uint64_t examined = 0;
  // p1 == 0.4 exactly where the deterministic tie-break gave l(p1) = 2 but an
  // optimal code with l(p1) = 1 exists.
  std::uint64_t tie_resolved = 0;
  std::optional<std::vector<int>> counterexample;

  bool holds() const noexcept { return !counterexample.has_value(); }
};

// Checks that the most likely symbol gets a one-letter codeword on every
// grid distribution with p1 >= 0.4.
JohnsenReport johnsen_verify(int q, int n_max, const SearchLimits& limits = {});

struct EqualizeReport {
  ProbabilityMultiset before;
  ProbabilityMultiset after;
  bool changed = false;
  double length_before = 0.0;
  double length_after = 0.0;  // on the original tree shape
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  double redundancy_before = 0.0;
  double redundancy_after = 0.0;  // Huffman code of the equalized source

  bool holds() const noexcept;
};

// Replaces the leaves of each level of a canonical D-ary Huffman tree (one
// internal child per node) by their mean, leaving the symbol p alone when
// given. Throws NotCanonical otherwise.
EqualizeReport equalize_verify(const ProbabilityMultiset& dist, int radix,
                               std::optional<double> p = std::nullopt);

// Sweeps over every grid p = k/q.

struct SandwichReport {
  int q = 0;
  int n_max = 0;
  int checked = 0;
  int violations = 0;
  double worst_lower_slack = 0.0;  // min over p of (min R) - r_min(p)
  double worst_upper_slack = 0.0;  // min over p of r_max(p) - (max R)
  std::uint64_t instances = 0;
};

SandwichReport sandwich_sweep(int q, int n_max, const SearchOptions& options = {});

struct TightnessReport {
  int q = 0;
  int n_max = 0;
  int on_grid = 0;  // p values whose backbone lies on the grid
  int achieved = 0;
  double worst_gap = 0.0;
};

TightnessReport tightness_sweep(int q, int n_max, const SearchOptions& options = {});

struct LeastLikelyReport {
  SearchReport search;
  LeastLikelyTerms terms;
  double bound = 0.0;  // r_min_pN with the floor-form first term
};

LeastLikelyReport least_likely_experiment(int p_num, int q, int n_max,
                                          const SearchOptions& options = {});

}  // namespace redlab
