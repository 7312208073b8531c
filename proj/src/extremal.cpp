#include "redlab/extremal.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "redlab/bounds.hpp"
#include "redlab/error.hpp"

namespace redlab {

namespace {

constexpr double kFeasTol = 1e-12;

void require_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "p must be in (0,1)");
  }
}

// mass * D^(m-l) / (D^m - 1) for l = 1..m, each repeated D-1 times.
std::vector<double> geometric_levels(double mass, int m, int radix) {
  const double d = radix;
  const double denom = std::pow(d, m) - 1.0;
  std::vector<double> out;
  for (int l = 1; l <= m; ++l) {
    const double x = mass * std::pow(d, m - l) / denom;
    for (int k = 0; k < radix - 1; ++k) out.push_back(x);
  }
  return out;
}

}  // namespace

std::string_view to_string(FamilyId id) noexcept {
  switch (id) {
    case FamilyId::UpperEps: return "upper";
    case FamilyId::Backbone: return "backbone";
    case FamilyId::PnFamily1: return "pn1";
    case FamilyId::PnFamily2: return "pn2";
    case FamilyId::DaryBackbone: return "dary";
  }
  return "unknown";
}

double upper_family_redundancy(double p, double eps) {
  const double h = binary_entropy(p);
  const double he = binary_entropy(eps);
  if (p <= (1.0 - eps) * (1.0 - p)) {
    return 1.0 + p - h - (1.0 - p) * (he - eps);
  }
  return 2.0 - p - h - (1.0 - p) * he;
}

ExtremalFamily upper_family(double p, double eps) {
  require_open_unit(p);
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw Error(ErrorCode::OutOfRange, "eps must be in (0,0.5]");
  }
  const std::vector<double> v{(1.0 - eps) * (1.0 - p), p, eps * (1.0 - p)};
  return {FamilyId::UpperEps, p, eps, std::nullopt, 2, make_distribution(v),
          true, upper_family_redundancy(p, eps)};
}

ExtremalFamily backbone(double p, std::optional<int> m) {
  return dary_backbone(p, 2, m);
}

ExtremalFamily dary_backbone(double p, int radix, std::optional<int> m) {
  require_open_unit(p);
  if (radix < 2) throw Error(ErrorCode::BadRadix, "radix must be at least 2");
  const int depth = m ? *m : *r_min_D(p, radix).witness_m;
  if (depth < 1) throw Error(ErrorCode::OutOfRange, "depth must be >= 1");

  auto values = geometric_levels(1.0 - p, depth, radix);
  // p has to sit no higher than the deepest sibling group's parent level.
  const bool feasible =
      depth == 1 || p <= values[(depth - 2) * (radix - 1)] + kFeasTol;
  values.push_back(p);
  return {radix == 2 ? FamilyId::Backbone : FamilyId::DaryBackbone,
          p,
          std::nullopt,
          depth,
          radix,
          make_distribution(values),
          feasible,
          canonical_redundancy(p, depth, radix)};
}

ExtremalFamily pN_family_1(double p) {
  if (!(p > 0.0 && p <= 0.5)) {
    throw Error(ErrorCode::OutOfRange, "p must be in (0,0.5]");
  }
  const auto terms = least_likely_terms(p);
  auto family = backbone(p, terms.m_floor);
  family.id = FamilyId::PnFamily1;
  family.feasible = family.feasible && p <= family.dist.min() + kFeasTol;
  return family;
}

ExtremalFamily pN_family_2(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw Error(ErrorCode::OutOfRange, "p must be in (0,0.5)");
  }
  const auto terms = least_likely_terms(p);
  const int depth = *terms.m_second;
  auto values = geometric_levels(1.0 - 2.0 * p, depth, 2);
  // The pair {p, p} must be the two least likely symbols.
  const bool feasible = p <= values.back() + kFeasTol;
  values.push_back(p);
  values.push_back(p);
  return {FamilyId::PnFamily2, p,        std::nullopt,   depth, 2,
          make_distribution(values), feasible, *terms.second};
}

}  // namespace redlab
