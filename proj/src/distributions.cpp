#include "redlab/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "redlab/error.hpp"

namespace redlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::BadRadix: return "BadRadix";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NegativeIndex: return "NegativeIndex";
    case ErrorCode::NotInternal: return "NotInternal";
    case ErrorCode::RootNode: return "RootNode";
    case ErrorCode::ZeroProbabilityNode: return "ZeroProbabilityNode";
    case ErrorCode::MissingSymbol: return "MissingSymbol";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroLeaf: return "ZeroLeaf";
    case ErrorCode::InfeasibleDepth: return "InfeasibleDepth";
    case ErrorCode::GridTooFine: return "GridTooFine";
    case ErrorCode::BadConstraint: return "BadConstraint";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

ProbabilityMultiset ProbabilityMultiset::from_values(
    std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "distribution is empty");
  }
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::NegativeProbability,
                  "probability " + std::to_string(v) + " is negative or NaN");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw Error(ErrorCode::SumNotOne,
                "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return ProbabilityMultiset(std::move(sorted));
}

ProbabilityMultiset make_distribution(std::span<const double> values) {
  return ProbabilityMultiset::from_values(values);
}

double entropy_bits(std::span<const double> weights) noexcept {
  double h = 0.0;
  for (double w : weights) {
    if (w > 0.0) h -= w * std::log2(w);
  }
  return h;
}

double entropy(const ProbabilityMultiset& dist, int radix) {
  if (radix < 2) {
    throw Error(ErrorCode::BadRadix, "radix must be at least 2");
  }
  const double h = entropy_bits(dist.probs());
  return radix == 2 ? h : h / std::log2(static_cast<double>(radix));
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "p must be in [0,1]");
  }
  const double w[2] = {p, 1.0 - p};
  return entropy_bits(w);
}

bool contains(const ProbabilityMultiset& dist, double p, double tol) noexcept {
  return find_index(dist, p, tol).has_value();
}

std::optional<std::size_t> find_index(const ProbabilityMultiset& dist, double p,
                                      double tol) noexcept {
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (std::abs(dist[i] - p) <= tol) return i;
  }
  return std::nullopt;
}

std::vector<double> parse_distribution_text(std::string_view text) {
  std::vector<double> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    auto is_sep = [](char c) {
      return c == ',' || c == ' ' || c == '\t' || c == '\r';
    };
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_sep(line[i])) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !is_sep(line[j])) ++j;
      const std::string_view token = line.substr(i, j - i);
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": invalid number '" +
                        std::string(token) + "'");
      }
      values.push_back(v);
      i = j;
    }
  }
  return values;
}

}  // namespace redlab
