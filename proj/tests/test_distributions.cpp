#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "redlab/distributions.hpp"
#include "redlab/error.hpp"

using namespace redlab;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected redlab::Error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("make_distribution sorts descending and keeps duplicates") {
  const auto d = make_distribution({0.25, 0.5, 0.25});
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 0.5);
  CHECK(d[1] == 0.25);
  CHECK(d[2] == 0.25);

  const auto single = make_distribution({1.0});
  CHECK(single.size() == 1);
  CHECK(single.max() == 1.0);

  const auto with_zero = make_distribution({0.0, 1.0});
  CHECK(with_zero.min() == 0.0);
}

TEST_CASE("make_distribution rejects invalid input") {
  CHECK(code_of([] { make_distribution({0.3, 0.3, 0.5}); }) == ErrorCode::SumNotOne);
  CHECK(code_of([] { make_distribution(std::span<const double>{}); }) ==
        ErrorCode::EmptyInput);
  CHECK(code_of([] { make_distribution({1.2, -0.2}); }) ==
        ErrorCode::NegativeProbability);
  CHECK(code_of([] { make_distribution({NAN, 1.0}); }) ==
        ErrorCode::NegativeProbability);
  // within SUM_TOL
  CHECK_NOTHROW(make_distribution({0.5, 0.5 + 5e-10}));
  CHECK(code_of([] { make_distribution({0.5, 0.5 + 5e-9}); }) == ErrorCode::SumNotOne);
}

TEST_CASE("entropy") {
  CHECK(entropy(make_distribution({0.5, 0.5}), 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entropy(make_distribution({1.0}), 2) == 0.0);
  const double third = 1.0 / 3.0;
  CHECK(entropy(make_distribution({third, third, third}), 3) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(entropy(make_distribution({0.5, 0.5, 0.0}), 2) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(code_of([] { entropy(make_distribution({1.0}), 1); }) == ErrorCode::BadRadix);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  // log2(3) - 2/3
  CHECK(std::abs(binary_entropy(1.0 / 3.0) - 0.9182958340544896) < 1e-12);
  CHECK(std::abs(binary_entropy(1.0 / 3.0) - 0.9183) < 1e-4);
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    CHECK(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)) < 1e-12);
    CHECK(std::abs(binary_entropy(p) - oracle::h2(p)) < 1e-12);
  }
  CHECK(code_of([] { binary_entropy(1.5); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { binary_entropy(-0.1); }) == ErrorCode::OutOfRange);
}

TEST_CASE("contains") {
  CHECK(contains(make_distribution({0.5, 0.3, 0.2}), 0.3, 1e-12));
  CHECK_FALSE(contains(make_distribution({0.5, 0.5}), 0.3, 1e-12));
  CHECK(contains(make_distribution({0.5, 0.25, 0.25}), 0.25, 0.0));
  CHECK(find_index(make_distribution({0.5, 0.25, 0.25}), 0.25) == 1u);
}

TEST_CASE("multiset equality ignores construction order") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto v = oracle::random_distribution(rng, 2 + trial % 9);
    const auto a = make_distribution(v);
    std::shuffle(v.begin(), v.end(), rng);
    const auto b = make_distribution(v);
    CHECK(a == b);
    CHECK(entropy(a) == entropy(b));
    CHECK(std::abs(entropy(a) - oracle::entropy(v)) < 1e-12);
  }
}

TEST_CASE("uniform entropy is log_D N") {
  for (int radix : {2, 3, 4, 7}) {
    for (int n = 1; n <= 40; ++n) {
      const std::vector<double> v(static_cast<std::size_t>(n), 1.0 / n);
      const double expected = std::log(n) / std::log(radix);
      CHECK(std::abs(entropy(make_distribution(v), radix) - expected) < 1e-12);
    }
  }
}

TEST_CASE("grouping identity on random partitions") {
  // H(P) = H((P - S) + {u}) + u H(S / u)
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    auto v = oracle::random_distribution(rng, n);
    std::shuffle(v.begin(), v.end(), rng);
    const std::size_t cut = 1 + rng() % (v.size() - 1);
    double u = 0.0;
    for (std::size_t i = 0; i < cut; ++i) u += v[i];
    std::vector<double> upper{u};
    std::vector<double> lower;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i < cut) {
        lower.push_back(v[i] / u);
      } else {
        upper.push_back(v[i]);
      }
    }
    const double whole = entropy(make_distribution(v));
    const double parts =
        entropy(make_distribution(upper)) + u * entropy(make_distribution(lower));
    CHECK(std::abs(whole - parts) < 1e-9);
  }
}

TEST_CASE("distribution text format") {
  const auto one_per_line = parse_distribution_text("# source\n0.5\n0.25\n\n0.25\n");
  CHECK(one_per_line == std::vector<double>{0.5, 0.25, 0.25});
  const auto single_line = parse_distribution_text("0.4, 0.3 0.3\n");
  CHECK(single_line == std::vector<double>{0.4, 0.3, 0.3});
  CHECK(parse_distribution_text("  # only a comment\n").empty());

  try {
    parse_distribution_text("0.5\n# note\n0.2x\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
