#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace redlab {

inline constexpr double kSumTol = 1e-9;
inline constexpr double kMemberTol = 1e-9;

// A finite multiset of probabilities summing to one. Elements are kept
// sorted in descending order, so two multisets built from permutations of
// the same values compare equal. Zero entries are legal.
class ProbabilityMultiset {
 public:
  static ProbabilityMultiset from_values(std::span<const double> values);
  static ProbabilityMultiset from_values(std::initializer_list<double> values) {
    return from_values(std::span<const double>(values.begin(), values.size()));
  }

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  double max() const noexcept { return probs_.front(); }
  double min() const noexcept { return probs_.back(); }

  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  friend bool operator==(const ProbabilityMultiset&,
                         const ProbabilityMultiset&) = default;

 private:
  explicit ProbabilityMultiset(std::vector<double> sorted)
      : probs_(std::move(sorted)) {}

  std::vector<double> probs_;
};

ProbabilityMultiset make_distribution(std::span<const double> values);
inline ProbabilityMultiset make_distribution(std::initializer_list<double> values) {
  return ProbabilityMultiset::from_values(values);
}

// -sum u log_D u, with 0 log 0 = 0.
double entropy(const ProbabilityMultiset& dist, int radix = 2);

// Shannon entropy of an arbitrary nonnegative weight vector (base 2); no
// normalization or validation.
double entropy_bits(std::span<const double> weights) noexcept;

double binary_entropy(double p);

bool contains(const ProbabilityMultiset& dist, double p,
              double tol = kMemberTol) noexcept;

// Index of the first element within tol of p, in descending order.
std::optional<std::size_t> find_index(const ProbabilityMultiset& dist, double p,
                                      double tol = kMemberTol) noexcept;

// Parses the distribution text format: '#' comment lines are skipped and
// every other line holds one or more decimals separated by commas or
// whitespace. Throws Error(ParseError) naming the offending line.
std::vector<double> parse_distribution_text(std::string_view text);

}  // namespace redlab
