#include "redlab/bounds.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "redlab/distributions.hpp"
#include "redlab/error.hpp"

namespace redlab {

namespace {

void require_open_unit(double p, const char* name = "p") {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::OutOfRange, std::string(name) + " must be in (0,1)");
  }
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double log_base(double x, int radix) {
  return radix == 2 ? std::log2(x) : std::log(x) / std::log(radix);
}

Constants compute_constants() {
  Constants c;
  c.gamma = 1.0 + 1.0 / 3.0 - binary_entropy(1.0 / 3.0);
  c.pi0 = bisect([](double p) { return 1.0 + p - binary_entropy(p) - 0.5; },
                 0.1, 0.25);
  const double gamma = c.gamma;
  c.pi1 = bisect(
      [gamma](double x) { return 3.0 - 5.0 * x - binary_entropy(2.0 * x) - gamma; },
      0.45, 0.4999);
  c.pi0_gap = 1.0 - binary_entropy(c.pi0) + c.pi0 / 2.0;
  for (int k = 0; k <= 30; ++k) c.beta.push_back(beta(k));
  return c;
}

BoundValue best_canonical(BoundId id, double p, int radix) {
  const auto depths = candidate_depths(p, radix);
  BoundValue out{id, p, radix, 0.0, std::nullopt, {}};
  for (int m : depths) {
    const double v = canonical_redundancy(p, m, radix);
    if (!out.witness_m || v < out.value) {
      out.value = v;
      out.witness_m = m;
    }
  }
  if (depths.size() == 1) {
    out.branch = "single";
  } else {
    out.branch = *out.witness_m == depths.front() ? "floor" : "ceil";
  }
  return out;
}

}  // namespace

std::string_view to_string(BoundId id) noexcept {
  switch (id) {
    case BoundId::RMax: return "R_MAX";
    case BoundId::RUb: return "R_UB";
    case BoundId::FP1: return "F_P1";
    case BoundId::RMin: return "R_MIN";
    case BoundId::RMinPN: return "R_MIN_PN";
    case BoundId::RMinD: return "R_MIN_D";
  }
  return "UNKNOWN";
}

const Constants& constants() {
  static const Constants c = compute_constants();
  return c;
}

double beta(int k) {
  if (k < 0) throw Error(ErrorCode::NegativeIndex, "beta index must be >= 0");
  if (k == 0) return 1.0;
  const double t = std::ldexp(1.0, k + 1) - 2.0;
  return 1.0 / (1.0 + 1.0 / std::log2(1.0 + 1.0 / t));
}

double canonical_redundancy(double p, int m, int radix) {
  const double dm = std::pow(static_cast<double>(radix), -m);
  const double h = binary_entropy(p) / (radix == 2 ? 1.0 : std::log2(radix));
  return m * p - h - (1.0 - p) * log_base(1.0 - dm, radix);
}

std::vector<int> candidate_depths(double p, int radix) {
  require_open_unit(p);
  if (radix < 2) throw Error(ErrorCode::BadRadix, "radix must be at least 2");
  double x = -log_base(p, radix);
  if (std::abs(x - std::round(x)) < 1e-12) x = std::round(x);
  const int lo = static_cast<int>(std::floor(x));
  const int hi = static_cast<int>(std::ceil(x));
  std::vector<int> out;
  if (lo >= 1) out.push_back(lo);
  if (hi != lo && hi >= 1) out.push_back(hi);
  if (out.empty()) out.push_back(1);
  return out;
}

BoundValue r_max(double p) {
  require_open_unit(p);
  const double h = binary_entropy(p);
  if (p >= 0.5) return {BoundId::RMax, p, 2, 2.0 - p - h, std::nullopt, "2-p-H(p)"};
  return {BoundId::RMax, p, 2, 1.0 + p - h, std::nullopt, "1+p-H(p)"};
}

BoundValue r_ub(double p) {
  require_open_unit(p);
  const double h = binary_entropy(p);
  if (p >= 0.5) return {BoundId::RUb, p, 2, 2.0 - p - h, std::nullopt, "2-p-H(p)"};
  if (p > constants().pi0) return {BoundId::RUb, p, 2, 0.5, std::nullopt, "0.5"};
  return {BoundId::RUb, p, 2, 1.0 + p - h, std::nullopt, "1+p-H(p)"};
}

BoundValue f_p1(double p1) {
  require_open_unit(p1, "p1");
  const auto& c = constants();
  if (p1 >= 0.5) {
    return {BoundId::FP1, p1, 2, 2.0 - p1 - binary_entropy(p1), std::nullopt, "2-p-H(p)"};
  }
  if (p1 >= c.pi1) {
    return {BoundId::FP1, p1, 2, 3.0 - 5.0 * p1 - binary_entropy(2.0 * p1),
            std::nullopt, "3-5p-H(2p)"};
  }
  return {BoundId::FP1, p1, 2, c.gamma, std::nullopt, "gamma"};
}

BoundValue r_min(double p) { return best_canonical(BoundId::RMin, p, 2); }

BoundValue r_min_D(double p, int radix) {
  require_open_unit(p);
  if (radix < 2) throw Error(ErrorCode::BadRadix, "radix must be at least 2");
  return best_canonical(BoundId::RMinD, p, radix);
}

LeastLikelyTerms least_likely_terms(double p) {
  if (!(p > 0.0 && p <= 0.5)) {
    throw Error(ErrorCode::OutOfRange, "p must be in (0,0.5]");
  }
  LeastLikelyTerms t;
  double x = -std::log2(p);
  if (std::abs(x - std::round(x)) < 1e-12) x = std::round(x);
  t.m_floor = static_cast<int>(std::floor(x));
  t.m_ceil = static_cast<int>(std::ceil(x));
  t.first_floor = canonical_redundancy(p, t.m_floor, 2);
  t.first_ceil = canonical_redundancy(p, t.m_ceil, 2);
  if (2.0 * p < 1.0) {
    double y = -std::log2(2.0 * p);
    if (std::abs(y - std::round(y)) < 1e-12) y = std::round(y);
    const int m2 = static_cast<int>(std::ceil(y));
    t.m_second = m2;
    t.second = canonical_redundancy(2.0 * p, m2, 2);
  }
  return t;
}

BoundValue r_min_pN(double p) {
  const auto t = least_likely_terms(p);
  if (t.second && *t.second < t.first_floor) {
    return {BoundId::RMinPN, p, 2, *t.second, t.m_second, "second"};
  }
  return {BoundId::RMinPN, p, 2, t.first_floor, t.m_floor, "first"};
}

}  // namespace redlab
