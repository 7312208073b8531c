#include <algorithm>
#include <atomic>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "redlab/error.hpp"
#include "search_common.hpp"

namespace redlab {

namespace {

// Partitions of `total` into at most `slots` parts, each <= cap, visited in
// descending lexicographic order.
template <typename Visit>
void for_each_partition(int total, int slots, int cap, std::vector<int>& parts,
                        Visit&& visit) {
  parts.clear();
  if (total == 0) {
    visit(parts);
    return;
  }
  if (slots <= 0 || cap <= 0 || total > slots * cap) return;

  auto fill = [&](int remaining, int v) {
    while (remaining > 0) {
      const int k = std::min(v, remaining);
      parts.push_back(k);
      remaining -= k;
    }
  };
  fill(total, cap);
  for (;;) {
    visit(parts);
    // Rightmost part that can shrink by one with the tail refilled.
    int remaining = 0;
    int i = static_cast<int>(parts.size()) - 1;
    for (; i >= 0; --i) {
      remaining += parts[i];
      const int v = parts[i] - 1;
      const int tail_slots = slots - i - 1;
      if (v >= 1 && remaining - v <= static_cast<long>(tail_slots) * v) break;
    }
    if (i < 0) return;
    const int v = parts[i] - 1;
    parts.resize(i);
    parts.push_back(v);
    fill(remaining - v, v);
  }
}

}  // namespace

SearchReport search_extremal(int p_num, int q, int n_max, SearchMode mode,
                             Constraint constraint, const SearchOptions& options) {
  detail::validate_search(p_num, q, n_max, constraint, options.limits);
  const detail::GridEntropy grid(q);

  // Work items: the largest part, from q down to ceil(q / n_max).
  const int lowest_first = (q + n_max - 1) / n_max;
  std::vector<int> firsts;
  for (int a = q; a >= lowest_first; --a) {
    if (constraint == Constraint::MaxIsP && a != p_num) continue;
    firsts.push_back(a);
  }

  const std::uint64_t cap = options.limits.instance_cap;
  std::vector<detail::Best> bests(firsts.size());
  std::vector<std::uint64_t> counts(firsts.size(), 0);
  std::atomic<std::uint64_t> flushed{0};
  std::atomic<bool> over_cap{false};

  const int items = static_cast<int>(firsts.size());
#ifdef _OPENMP
  const int workers = options.workers > 0 ? options.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
  for (int w = 0; w < items; ++w) {
    if (over_cap.load(std::memory_order_relaxed)) continue;
    const int first = firsts[w];
    std::vector<int> tail;
    std::vector<int> full;
    full.reserve(static_cast<std::size_t>(n_max));
    std::uint64_t local = 0;
    std::uint64_t pending = 0;
    for_each_partition(q - first, n_max - 1, first, tail, [&](const std::vector<int>& t) {
      full.assign(1, first);
      full.insert(full.end(), t.begin(), t.end());
      if (!detail::satisfies(constraint, full, p_num)) return;
      ++local;
      if (++pending == 4096) {
        if (flushed.fetch_add(pending) + pending > cap) over_cap.store(true);
        pending = 0;
      }
      bests[w].offer(mode, grid.redundancy(full), full);
    });
    flushed.fetch_add(pending);
    counts[w] = local;
  }

  std::uint64_t instances = 0;
  for (auto c : counts) instances += c;
  if (over_cap.load() || instances > cap) {
    throw Error(ErrorCode::GridTooFine, "instance cap exceeded");
  }
  detail::Best best;
  for (const auto& b : bests) best.merge(mode, b);
  return detail::finish_report(p_num, q, n_max, mode, constraint, best, instances);
}

}  // namespace redlab
