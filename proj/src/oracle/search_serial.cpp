#include <algorithm>
#include <string>

#include "redlab/error.hpp"
#include "search_common.hpp"

namespace redlab {

std::string_view to_string(SearchMode mode) noexcept {
  return mode == SearchMode::Min ? "MIN" : "MAX";
}

std::string_view to_string(Constraint constraint) noexcept {
  switch (constraint) {
    case Constraint::ContainsP: return "CONTAINS_P";
    case Constraint::MinIsP: return "MIN_IS_P";
    case Constraint::MaxIsP: return "MAX_IS_P";
  }
  return "UNKNOWN";
}

ProbabilityMultiset SearchReport::witness_distribution() const {
  std::vector<double> v;
  v.reserve(witness.size());
  for (int k : witness) v.push_back(static_cast<double>(k) / q);
  return make_distribution(v);
}

std::int64_t huffman_cost(std::span<const int> descending) {
  // Two-queue merge: leaves ascending from the back, merged nodes in FIFO
  // order are nondecreasing too.
  const std::size_t n = descending.size();
  if (n == 0) return 0;
  if (n == 1) return descending[0];  // padded with a dummy, one letter
  std::vector<std::int64_t> merged;
  merged.reserve(n);
  std::size_t leaf = n;  // next leaf is descending[leaf - 1]
  std::size_t head = 0;
  std::int64_t cost = 0;
  auto pop = [&]() -> std::int64_t {
    if (leaf > 0 && (head == merged.size() || descending[leaf - 1] <= merged[head])) {
      return descending[--leaf];
    }
    return merged[head++];
  };
  for (std::size_t step = 0; step + 1 < n; ++step) {
    const std::int64_t a = pop();
    const std::int64_t b = pop();
    cost += a + b;
    merged.push_back(a + b);
  }
  return cost;
}

double grid_redundancy(std::span<const int> descending, int q) {
  return detail::GridEntropy(q).redundancy(descending);
}

namespace detail {

void validate_search(int p_num, int q, int n_max, Constraint constraint,
                     const SearchLimits& limits) {
  if (constraint != Constraint::ContainsP && constraint != Constraint::MinIsP &&
      constraint != Constraint::MaxIsP) {
    throw Error(ErrorCode::BadConstraint, "unknown constraint");
  }
  if (q < 2 || p_num < 1 || p_num >= q) {
    throw Error(ErrorCode::OutOfRange, "need 1 <= p_num < q");
  }
  if (n_max < 2) throw Error(ErrorCode::OutOfRange, "need n_max >= 2");
  if (q > limits.max_q || n_max > limits.max_n) {
    throw Error(ErrorCode::GridTooFine,
                "grid q=" + std::to_string(q) + ", n=" + std::to_string(n_max) +
                    " exceeds the configured limits");
  }
}

SearchReport finish_report(int p_num, int q, int n_max, SearchMode mode,
                           Constraint constraint, const Best& best,
                           std::uint64_t instances) {
  if (!best.found) {
    throw Error(ErrorCode::BadConstraint,
                std::string("no grid distribution satisfies ") +
                    std::string(to_string(constraint)));
  }
  return {mode, constraint, p_num, q, n_max, best.value, best.witness, instances};
}

}  // namespace detail

namespace {

struct SerialSearch {
  int p_num;
  int n_max;
  SearchMode mode;
  Constraint constraint;
  std::uint64_t cap;
  const detail::GridEntropy& grid;
  detail::Best best;
  std::uint64_t instances = 0;
  std::vector<int> parts;

  void visit(int remaining, int max_part) {
    if (remaining == 0) {
      if (!detail::satisfies(constraint, parts, p_num)) return;
      if (++instances > cap) {
        throw Error(ErrorCode::GridTooFine, "instance cap exceeded");
      }
      best.offer(mode, grid.redundancy(parts), parts);
      return;
    }
    if (static_cast<int>(parts.size()) == n_max) return;
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
      parts.push_back(k);
      visit(remaining - k, k);
      parts.pop_back();
    }
  }
};

}  // namespace

SearchReport search_extremal_serial(int p_num, int q, int n_max, SearchMode mode,
                                    Constraint constraint,
                                    const SearchLimits& limits) {
  detail::validate_search(p_num, q, n_max, constraint, limits);
  const detail::GridEntropy grid(q);
  SerialSearch s{p_num, n_max, mode, constraint, limits.instance_cap, grid, {}, 0, {}};
  s.visit(q, q);
  return detail::finish_report(p_num, q, n_max, mode, constraint, s.best, s.instances);
}

}  // namespace redlab
