#pragma once

// Pieces shared by the serial and OpenMP search kernels.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "redlab/oracle.hpp"

namespace redlab::detail {

// k log2 k for k = 0..q, so both kernels evaluate identical expressions.
class GridEntropy {
 public:
  explicit GridEntropy(int q) : q_(q), klogk_(static_cast<std::size_t>(q) + 1, 0.0) {
    for (int k = 2; k <= q; ++k) klogk_[k] = k * std::log2(static_cast<double>(k));
    log2q_ = std::log2(static_cast<double>(q));
  }

  double redundancy(std::span<const int> descending) const {
    double s = 0.0;
    for (int k : descending) s += klogk_[k];
    const double h = log2q_ - s / q_;
    return static_cast<double>(huffman_cost(descending)) / q_ - h;
  }

 private:
  int q_;
  double log2q_ = 0.0;
  std::vector<double> klogk_;
};

struct Best {
  bool found = false;
  double value = 0.0;
  std::vector<int> witness;

  // Strict total order: extremal value, then fewer parts, then
  // lexicographically smaller witness.
  bool improves(SearchMode mode, double v, std::span<const int> w) const {
    if (!found) return true;
    if (v != value) return mode == SearchMode::Min ? v < value : v > value;
    if (w.size() != witness.size()) return w.size() < witness.size();
    return std::lexicographical_compare(w.begin(), w.end(), witness.begin(),
                                        witness.end());
  }

  void offer(SearchMode mode, double v, std::span<const int> w) {
    if (improves(mode, v, w)) {
      found = true;
      value = v;
      witness.assign(w.begin(), w.end());
    }
  }

  void merge(SearchMode mode, const Best& other) {
    if (other.found) offer(mode, other.value, other.witness);
  }
};

inline bool satisfies(Constraint c, std::span<const int> parts, int p_num) {
  switch (c) {
    case Constraint::ContainsP:
      for (int k : parts) {
        if (k == p_num) return true;
      }
      return false;
    case Constraint::MinIsP: return parts.back() == p_num;
    case Constraint::MaxIsP: return parts.front() == p_num;
  }
  return false;
}

void validate_search(int p_num, int q, int n_max, Constraint constraint,
                     const SearchLimits& limits);

SearchReport finish_report(int p_num, int q, int n_max, SearchMode mode,
                           Constraint constraint, const Best& best,
                           std::uint64_t instances);

}  // namespace redlab::detail
