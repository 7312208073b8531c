#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "redlab/bounds.hpp"
#include "redlab/error.hpp"
#include "redlab/extremal.hpp"
#include "redlab/huffman.hpp"
#include "redlab/oracle.hpp"

namespace redlab {

namespace {

void for_each_grid_partition(int remaining, int max_part, int slots,
                             std::vector<int>& parts,
                             const std::function<void(const std::vector<int>&)>& f) {
  if (remaining == 0) {
    f(parts);
    return;
  }
  if (slots == 0) return;
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    parts.push_back(k);
    for_each_grid_partition(remaining - k, k, slots - 1, parts, f);
    parts.pop_back();
  }
}

ProbabilityMultiset grid_distribution(const std::vector<int>& parts, int q) {
  std::vector<double> v;
  for (int k : parts) v.push_back(static_cast<double>(k) / q);
  return make_distribution(v);
}

}  // namespace

JohnsenReport johnsen_verify(int q, int n_max, const SearchLimits& limits) {
  if (q < 2 || n_max < 1) throw Error(ErrorCode::OutOfRange, "need q >= 2, n >= 1");
  if (q > limits.max_q || n_max > limits.max_n) {
    throw Error(ErrorCode::GridTooFine, "grid exceeds the configured limits");
  }
  JohnsenReport report{q, n_max, 0, 0, std::nullopt};
  std::vector<int> parts;
  for (int first = q; 5 * first >= 2 * q; --first) {
    parts.assign(1, first);
    for_each_grid_partition(q - first, first, n_max - 1, parts, [&](const std::vector<int>& w) {
      if (report.counterexample) return;
      if (++report.examined > limits.instance_cap) {
        throw Error(ErrorCode::GridTooFine, "instance cap exceeded");
      }
      if (w.size() < 2) return;  // single symbol: length 1 by construction
      const auto lengths = code_lengths(build_huffman(grid_distribution(w, q), 2));
      if (lengths[0] == 1) return;
      // At p1 = 0.4 exactly the threshold is attained and ties decide
      // the shape; accept when a code with l(p1) = 1 is also optimal.
      if (5 * first == 2 * q) {
        const std::span<const int> rest(w.begin() + 1, w.end());
        if (q + huffman_cost(rest) == huffman_cost(w)) {
          ++report.tie_resolved;
          return;
        }
      }
      report.counterexample = w;
    });
  }
  return report;
}

bool EqualizeReport::holds() const noexcept {
  const bool length_kept = std::abs(length_after - length_before) <= 1e-9;
  const bool entropy_up = changed ? entropy_after > entropy_before
                                  : entropy_after >= entropy_before - 1e-12;
  return length_kept && entropy_up && redundancy_after <= redundancy_before + 1e-9;
}

EqualizeReport equalize_verify(const ProbabilityMultiset& dist, int radix,
                               std::optional<double> p) {
  const CodeTree tree = build_huffman(dist, radix);
  const auto nodes = tree.nodes();
  for (const auto& node : nodes) {
    const auto internal = std::count_if(node.children.begin(), node.children.end(),
                                        [&](std::size_t c) { return !nodes[c].is_leaf(); });
    if (internal > 1) {
      throw Error(ErrorCode::NotCanonical,
                  "a node has more than one internal child");
    }
  }
  std::optional<std::size_t> keep;
  if (p) {
    keep = find_index(dist, *p);
    if (!keep) {
      throw Error(ErrorCode::MissingSymbol, "distribution does not contain p");
    }
  }

  std::size_t max_depth = 0;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (nodes[id].is_leaf()) max_depth = std::max(max_depth, tree.depths()[id]);
  }
  std::vector<double> equalized(nodes.size(), 0.0);
  bool changed = false;
  for (std::size_t depth = 1; depth <= max_depth; ++depth) {
    std::vector<std::size_t> level;
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      if (!nodes[id].is_leaf() || tree.depths()[id] != depth) continue;
      if (keep && nodes[id].symbol == *keep) {
        equalized[id] = nodes[id].prob;
        continue;
      }
      level.push_back(id);
    }
    if (level.empty()) continue;
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t id : level) {
      sum += nodes[id].prob;
      lo = std::min(lo, nodes[id].prob);
      hi = std::max(hi, nodes[id].prob);
    }
    if (hi - lo > 1e-12) changed = true;
    const double mean = sum / static_cast<double>(level.size());
    for (std::size_t id : level) equalized[id] = mean;
  }

  std::vector<double> values;
  double length_after = 0.0;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (!nodes[id].is_leaf()) continue;
    values.push_back(equalized[id]);
    length_after += equalized[id] * static_cast<double>(tree.depths()[id]);
  }
  auto after = make_distribution(values);

  EqualizeReport r{dist, after};
  r.changed = changed;
  r.length_before = average_length(tree);
  r.length_after = length_after;
  r.entropy_before = entropy(dist, radix);
  r.entropy_after = entropy(after, radix);
  r.redundancy_before = r.length_before - r.entropy_before;
  r.redundancy_after = redundancy(after, radix);
  return r;
}

SandwichReport sandwich_sweep(int q, int n_max, const SearchOptions& options) {
  SandwichReport report{q, n_max, 0, 0, std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), 0};
  for (int k = 1; k < q; ++k) {
    const double p = static_cast<double>(k) / q;
    const auto lo = search_extremal(k, q, n_max, SearchMode::Min, Constraint::ContainsP, options);
    const auto hi = search_extremal(k, q, n_max, SearchMode::Max, Constraint::ContainsP, options);
    const double lower_slack = lo.redundancy - r_min(p).value;
    const double upper_slack = r_max(p).value - hi.redundancy;
    ++report.checked;
    if (lower_slack < -1e-9 || upper_slack < -1e-9) ++report.violations;
    report.worst_lower_slack = std::min(report.worst_lower_slack, lower_slack);
    report.worst_upper_slack = std::min(report.worst_upper_slack, upper_slack);
    report.instances += lo.instances + hi.instances;
  }
  return report;
}

TightnessReport tightness_sweep(int q, int n_max, const SearchOptions& options) {
  TightnessReport report{q, n_max, 0, 0, 0.0};
  for (int k = 1; k < q; ++k) {
    const double p = static_cast<double>(k) / q;
    const auto family = backbone(p);
    if (static_cast<int>(family.dist.size()) > n_max) continue;
    bool on_grid = true;
    for (double x : family.dist) {
      const double scaled = x * q;
      if (std::abs(scaled - std::round(scaled)) > 1e-9) on_grid = false;
    }
    if (!on_grid) continue;
    ++report.on_grid;
    const auto found = search_extremal(k, q, n_max, SearchMode::Min, Constraint::ContainsP, options);
    const double gap = std::abs(found.redundancy - r_min(p).value);
    report.worst_gap = std::max(report.worst_gap, gap);
    if (gap <= 1e-9) ++report.achieved;
  }
  return report;
}

LeastLikelyReport least_likely_experiment(int p_num, int q, int n_max,
                                          const SearchOptions& options) {
  const double p = static_cast<double>(p_num) / q;
  auto search = search_extremal(p_num, q, n_max, SearchMode::Min, Constraint::MinIsP, options);
  return {std::move(search), least_likely_terms(p), r_min_pN(p).value};
}

}  // namespace redlab
