#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "redlab/error.hpp"
#include "redlab/oracle.hpp"

namespace redlab {

namespace {

std::vector<double> gradient(std::span<const double> alpha) {
  std::vector<double> g(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    g[i] = static_cast<double>(i) + std::log2(alpha[i]) + 1.0 / std::numbers::ln2;
  }
  return g;
}

}  // namespace

double kkt_objective(std::span<const double> alpha) {
  double g = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > 0.0) g += alpha[i] * (static_cast<double>(i) + std::log2(alpha[i]));
  }
  return g;
}

std::vector<double> kkt_closed_form(int m) {
  const double denom = std::ldexp(1.0, m) - 1.0;
  std::vector<double> a(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) a[i - 1] = std::ldexp(1.0, m - i) / denom;
  return a;
}

std::vector<double> project_ordered_simplex(std::span<const double> y) {
  const double n = static_cast<double>(y.size());
  const double shift = (std::accumulate(y.begin(), y.end(), 0.0) - 1.0) / n;

  // Pool adjacent violators for a nonincreasing fit.
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  for (double v : y) {
    blocks.push_back({v - shift, 1});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      const Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.mean());
  return out;
}

KktReport kkt_verify(int m, std::size_t iterations, double step) {
  if (m < 1 || m > 20) throw Error(ErrorCode::OutOfRange, "m must be in [1,20]");
  KktReport report;
  report.m = m;
  report.closed_form = kkt_closed_form(m);

  std::vector<double> alpha(static_cast<std::size_t>(m), 1.0 / m);
  double f = kkt_objective(alpha);
  std::size_t k = 1;
  for (; m > 1 && k <= iterations; ++k) {
    const auto g = gradient(alpha);
    double eta = step / std::sqrt(static_cast<double>(k));
    std::vector<double> next;
    double f_next = 0.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 80; ++halvings, eta *= 0.5) {
      std::vector<double> y(alpha.size());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = alpha[i] - eta * g[i];
      next = project_ordered_simplex(y);
      if (!(next.back() > 0.0)) continue;
      // Sufficient decrease for the projected step.
      double lin = 0.0;
      double sq = 0.0;
      for (std::size_t i = 0; i < next.size(); ++i) {
        const double d = next[i] - alpha[i];
        lin += g[i] * d;
        sq += d * d;
      }
      f_next = kkt_objective(next);
      if (f_next <= f + lin + sq / (2.0 * eta)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    double moved = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      moved = std::max(moved, std::abs(next[i] - alpha[i]));
    }
    alpha = std::move(next);
    f = f_next;
    if (moved < 1e-15) break;
  }

  report.iterations = k;
  report.numeric = alpha;
  report.objective_gap = f - kkt_objective(report.closed_form);
  for (int i = 0; i < m; ++i) {
    report.max_deviation =
        std::max(report.max_deviation, std::abs(alpha[i] - report.closed_form[i]));
  }
  if (!(report.max_deviation < 1e-6 && std::abs(report.objective_gap) < 1e-6)) {
    throw Error(ErrorCode::NoConvergence,
                "projected descent for m=" + std::to_string(m) +
                    " stopped at deviation " + std::to_string(report.max_deviation));
  }
  return report;
}

}  // namespace redlab
