#include "aniso/sequence.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace aniso;

namespace {

Coefficients coeffs(std::vector<double> a, std::vector<double> b) {
  return SequencePair::from_lists(std::move(a), std::move(b)).coefficients();
}

}  // namespace

TEST(Family, Evaluation) {
  EXPECT_DOUBLE_EQ(Family::power(1.0, 1.0)(5), 5.0);
  EXPECT_DOUBLE_EQ(Family::exponential(1.0, 2.0)(3), 8.0);
  EXPECT_DOUBLE_EQ(Family::list({3, 1, 4})(2), 1.0);
  EXPECT_DOUBLE_EQ(Family::constant(2.5)(100), 2.5);
  EXPECT_DOUBLE_EQ(Family::logarithmic(2.0, 1.0)(1), 2.0 * std::log(2.0));
  const Family b = Family::power(1.0, 1.0);
  EXPECT_DOUBLE_EQ(Family::double_scale()(2, &b), std::pow(2.0 * M_PI, 4.0));
}

TEST(Family, RejectsOutOfRange) {
  EXPECT_THROW(Family::list({1, 2})(3), InputError);
  EXPECT_THROW(Family::list({1, 2})(0), InputError);
  EXPECT_THROW(Family::list({1, -2}), InputError);
  EXPECT_THROW(Family::constant(0.0), InputError);
  EXPECT_THROW(Family::double_scale()(1), InputError);
}

TEST(Family, Pure) {
  const Family f = Family::logarithmic(1.3, 0.7);
  for (std::size_t j = 1; j < 50; ++j) EXPECT_EQ(f(j), f(j));
}

TEST(Family, MonotonicityFlags) {
  EXPECT_TRUE(Family::list({1, 2, 2, 5}).non_decreasing());
  EXPECT_FALSE(Family::list({1, 3, 2}).non_decreasing());
  EXPECT_TRUE(Family::exponential(1.0, 2.0).non_decreasing());
  EXPECT_FALSE(Family::power(1.0, -1.0).non_decreasing());
  EXPECT_FALSE(Family::power(1.0, -1.0).bounded_away_from_zero());
}

TEST(Shape, HarmonicSmoothness) {
  EXPECT_DOUBLE_EQ(harmonic_smoothness(coeffs({1}, {1})), 1.0);
  EXPECT_DOUBLE_EQ(harmonic_smoothness(coeffs({1, 1}, {1, 2})), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(harmonic_smoothness(coeffs({1, 1, 1, 1}, {3, 3, 3, 3})), 0.75);
}

TEST(Shape, ExponentBound) {
  EXPECT_DOUBLE_EQ(exponent_bound(coeffs({1, 1, 1}, {0.3, 1, 2})), 4.0);
  EXPECT_DOUBLE_EQ(exponent_bound(coeffs({1}, {0.25})), 1.0);
  EXPECT_DOUBLE_EQ(exponent_bound(coeffs({1, 1}, {1, 1})), 2.0);
}

TEST(Shape, ShiftConstant) {
  EXPECT_DOUBLE_EQ(shift_constant(coeffs({1}, {1})), 0.5);
  EXPECT_DOUBLE_EQ(shift_constant(coeffs({4}, {1})), 1.0);
  EXPECT_NEAR(shift_constant(coeffs({1, 1}, {1, 1})), std::sqrt(0.5), 1e-15);
}

TEST(Shape, MonotoneInDimension) {
  const SequencePair s(Family::power(1.0, 1.0), Family::logarithmic(1.0, 1.0), 1);
  double g = harmonic_smoothness(s);
  double p = exponent_bound(s);
  for (int d = 2; d <= 30; ++d) {
    const auto sd = s.with_dim(d);
    EXPECT_LT(harmonic_smoothness(sd), g);
    EXPECT_GE(exponent_bound(sd), p);
    g = harmonic_smoothness(sd);
    p = exponent_bound(sd);
  }
}

TEST(SequencePair, MaterializesPrefix) {
  const SequencePair s(Family::exponential(1.0, 2.0), Family::constant(1.5), 4);
  EXPECT_EQ(s.dim(), 4);
  EXPECT_DOUBLE_EQ(s.coefficients().a[3], 16.0);
  EXPECT_DOUBLE_EQ(s.coefficients().b[0], 1.5);
  EXPECT_THROW(SequencePair(Family::list({1, 2}), Family::constant(1.0), 3), InputError);
  EXPECT_THROW(SequencePair(Family::constant(1.0), Family::double_scale(), 2), InputError);
}

TEST(SequencePair, DoubleScaleUsesSmoothness) {
  const SequencePair s(Family::double_scale(), Family::list({0.5, 1.0}), 2);
  EXPECT_NEAR(s.a(1), 2.0 * M_PI, 1e-12);
  EXPECT_NEAR(s.a(2), 4.0 * M_PI * M_PI, 1e-12);
}

TEST(Json, RoundTrip) {
  const auto j = nlohmann::json::parse(R"({"a": {"kind": "power", "c": 1.0, "alpha": 2.0},
                                           "b": [1, 2, 3]})");
  const SequencePair s = sequence_from_json(j);
  EXPECT_EQ(s.dim(), 3);
  EXPECT_DOUBLE_EQ(s.a(3), 9.0);
  const SequencePair back = sequence_from_json(to_json(s));
  EXPECT_EQ(back.a_family(), s.a_family());
  EXPECT_EQ(back.b_family(), s.b_family());
  EXPECT_EQ(back.dim(), s.dim());
}

TEST(Json, DimensionRules) {
  EXPECT_EQ(sequence_from_json(nlohmann::json::parse(R"({"a": [1, 2, 3], "b": [1, 1]})")).dim(), 2);
  EXPECT_THROW(sequence_from_json(nlohmann::json::parse(R"({"a": {"kind": "constant", "c": 1},
                                                            "b": {"kind": "constant", "c": 1}})")),
               InputError);
  EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"kind": "spline"})")), InputError);
}
