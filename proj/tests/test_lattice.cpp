#include "aniso/lattice.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace aniso;

namespace {

Coefficients coeffs(std::vector<double> a, std::vector<double> b) {
  return SequencePair::from_lists(std::move(a), std::move(b)).coefficients();
}

CountOptions strict() {
  CountOptions o;
  o.comparison = Comparison::strict;
  return o;
}

Coefficients random_coeffs(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> ua(0.5, 4.0), ub(0.5, 3.0);
  std::vector<double> a, b;
  for (int j = 0; j < d; ++j) {
    a.push_back(ua(rng));
    b.push_back(ub(rng));
  }
  return coeffs(a, b);
}

}  // namespace

TEST(Count, Examples) {
  EXPECT_EQ(count(coeffs({1}, {1}), 4.5), 5u);
  EXPECT_EQ(count(coeffs({1, 1}, {1, 1}), 2.0), 9u);
  EXPECT_EQ(count(coeffs({1, 1}, {1, 1}), 2.0, strict()), 5u);
  EXPECT_EQ(count(coeffs({1}, {1}), 0.0), 1u);
  EXPECT_EQ(count(coeffs({1}, {1}), 0.0, strict()), 0u);
  EXPECT_THROW(count(coeffs({1}, {1}), -1.0), InputError);
}

TEST(Count, PowerRadius) {
  EXPECT_EQ(count_within_power_radius(coeffs({1}, {1}), 2), 5u);
  EXPECT_EQ(count_within_power_radius(coeffs({1}, {1}), 3), 7u);
  const auto c = coeffs({1, 1}, {1, 1});
  EXPECT_EQ(oracle::box_count(c, 4.0, false), 13u);
  EXPECT_EQ(count_within_power_radius(c, 2), 13u);
  EXPECT_EQ(count_within_power_radius(c, 2, WeightMode::exact), 13u);
}

TEST(Count, MatchesBoxScan) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const auto c = random_coeffs(rng, 1 + trial % 3);
    for (double t : {0.0, 0.7, 3.0, 11.5, 40.0}) {
      EXPECT_EQ(count(c, t), oracle::box_count(c, t, false)) << trial << " " << t;
      EXPECT_EQ(count(c, t, strict()), oracle::box_count(c, t, true)) << trial << " " << t;
    }
  }
}

TEST(Count, MonotoneInThreshold) {
  std::mt19937_64 rng(4);
  const auto c = random_coeffs(rng, 3);
  std::uint64_t prev = 0;
  for (double t = 0.0; t <= 60.0; t += 0.37) {
    const auto n = count(c, t);
    EXPECT_GE(n, prev);
    EXPECT_LE(count(c, t, strict()), n);
    prev = n;
  }
}

TEST(Count, ThreadIndependent) {
  const auto c = coeffs({0.7, 1.3, 2.1}, {0.6, 1.0, 1.5});
  CountOptions many;
  many.threads = 5;
  for (double t : {10.0, 250.0, 1000.0}) EXPECT_EQ(count(c, t), count(c, t, many));
}

TEST(Count, ExactModeResolvesTies) {
  // The double 0.2 is exactly twice the double 0.1, so |k_1| + 2|k_2| <= 3 is the exact condition.
  const auto c = coeffs({0.1, 0.2}, {0.5, 0.5});
  EXPECT_EQ(count_exact(c, Rational(mpq_class(0.1) + mpq_class(0.2))), 13u);
  // Against exactly 3/10 the double 0.1 is slightly too large: only |k_1| <= 2 on the axis and (0, +-1).
  EXPECT_EQ(count_exact(c, Rational(3, 10)), 7u);
  EXPECT_TRUE(exact_eligible(coeffs({1, 3}, {0.5, 2})));
  EXPECT_FALSE(exact_eligible(coeffs({1}, {0.3})));
  EXPECT_THROW(count(coeffs({1}, {0.3}), 5.0, WeightMode::exact, {}), InputError);
}

TEST(Count, ToleranceTreatsNearTiesAsTies) {
  const auto c = coeffs({1, 1}, {1, 1});
  CountOptions loose;
  loose.tolerance = 1e-9;
  EXPECT_EQ(count(c, 2.0 - 1e-12, loose), 9u);
  EXPECT_EQ(count(c, 2.0 - 1e-12), 5u);
  loose.comparison = Comparison::strict;
  EXPECT_EQ(count(c, 2.0 + 1e-12, loose), 5u);
}

TEST(Count, CapacityError) {
  CountOptions tight;
  tight.coordinate_cap = 100;
  EXPECT_THROW(count(coeffs({1}, {0.5}), 1000.0, tight), CapacityError);
  EXPECT_EQ(count(coeffs({1}, {0.5}), 50.0, tight), 101u);
}

TEST(Enumerate, Examples) {
  const auto one = enumerate_increasing(coeffs({1}, {1}), 7);
  ASSERT_EQ(one.size(), 4u);
  EXPECT_EQ(one[0].weight, 0.0);
  EXPECT_EQ(one[0].multiplicity, 1u);
  EXPECT_EQ(one[1].weight, 1.0);
  EXPECT_EQ(one[2].weight, 4.0);
  EXPECT_EQ(one[3].weight, 9.0);
  EXPECT_EQ(one[3].multiplicity, 2u);
  EXPECT_EQ(one[3].cumulative, 7u);

  const auto two = enumerate_increasing(coeffs({1, 1}, {1, 1}), 21);
  const std::vector<std::pair<double, std::uint64_t>> expected{{0, 1}, {1, 4}, {2, 4}, {4, 4}, {5, 8}};
  ASSERT_EQ(two.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(two[i].weight, expected[i].first);
    EXPECT_EQ(two[i].multiplicity, expected[i].second);
  }

  const auto quartic = enumerate_increasing(coeffs({2}, {2}), 5);
  ASSERT_EQ(quartic.size(), 3u);
  EXPECT_EQ(quartic[1].weight, 2.0);
  EXPECT_EQ(quartic[2].weight, 32.0);
}

TEST(Enumerate, CumulativeMatchesCount) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 4; ++trial) {
    const auto c = random_coeffs(rng, 1 + trial % 3);
    for (const auto& level : enumerate_increasing(c, 3000)) {
      EXPECT_EQ(level.cumulative, count(c, level.weight));
      EXPECT_EQ(level.cumulative - level.multiplicity, count(c, level.weight, strict()));
    }
  }
}

TEST(Enumerate, ExactLevels) {
  const auto levels = enumerate_increasing_exact(coeffs({1, 0.5}, {1, 0.5}), 30);
  for (std::size_t i = 1; i < levels.size(); ++i) EXPECT_LT(levels[i - 1].weight, levels[i].weight);
  EXPECT_EQ(levels[1].weight, Rational(1, 2));
}

TEST(Enumerate, HeapCap) {
  IncreasingWeights<double> walk(coeffs({1, 1, 1, 1}, {1, 1, 1, 1}), 4);
  EXPECT_THROW(
      {
        for (int i = 0; i < 100; ++i) walk.next();
      },
      CapacityError);
}

TEST(OrderStatistic, Examples) {
  EXPECT_EQ(kth_smallest_weight(coeffs({1}, {1}), 1).value, 0.0);
  EXPECT_EQ(kth_smallest_weight(coeffs({1}, {1}), 4).value, 4.0);
  EXPECT_EQ(kth_smallest_weight(coeffs({1, 1}, {1, 1}), 10).value, 4.0);
  EXPECT_THROW(kth_smallest_weight(coeffs({1}, {1}), 0), InputError);
}

TEST(OrderStatistic, PathsAgreeWithSort) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    const auto c = random_coeffs(rng, 1 + trial);
    const auto sorted = oracle::sorted_weights(c, 2000);
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = 1; n <= 2000; ++n) ns.push_back(n);
    OrderStatisticOptions heap;
    heap.path = OrderStatisticPath::heap;
    const auto from_heap = kth_smallest_weights(c, ns, heap);
    for (std::size_t i = 0; i < ns.size(); ++i) ASSERT_EQ(from_heap[i].value, sorted[i]) << trial << " " << ns[i];
    OrderStatisticOptions bis;
    bis.path = OrderStatisticPath::bisection;
    for (std::uint64_t n : {1u, 7u, 100u, 999u, 2000u}) {
      EXPECT_EQ(kth_smallest_weight(c, n, bis).value, sorted[n - 1]) << trial << " " << n;
    }
  }
}

TEST(OrderStatistic, ExactMatchesFloatOnIntegers) {
  const auto c = coeffs({1, 2, 3}, {1, 1, 0.5});
  OrderStatisticOptions exact;
  exact.mode = WeightMode::exact;
  for (std::uint64_t n : {1u, 5u, 50u, 500u}) {
    const auto e = kth_smallest_weight(c, n, exact);
    ASSERT_TRUE(e.exact.has_value());
    EXPECT_EQ(e.exact->get_d(), kth_smallest_weight(c, n).value);
  }
  exact.path = OrderStatisticPath::bisection;
  EXPECT_THROW(kth_smallest_weight(c, 5, exact), InputError);
}

TEST(OrderStatistic, ResultsFollowInputOrder) {
  const auto c = coeffs({1, 1}, {1, 1});
  const std::vector<std::uint64_t> ns{10, 1, 5};
  const auto w = kth_smallest_weights(c, ns);
  EXPECT_EQ(w[0].value, 4.0);
  EXPECT_EQ(w[1].value, 0.0);
  EXPECT_EQ(w[2].value, 1.0);
}
