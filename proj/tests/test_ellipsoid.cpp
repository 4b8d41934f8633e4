#include "aniso/ellipsoid.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace aniso;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST(UnitBall, ClosedForms) {
  EXPECT_NEAR(volume_unit_ball(vec({1, 1, 1})), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(volume_unit_ball(vec({2, 2})), M_PI, 1e-14);
  EXPECT_NEAR(volume_unit_ball(vec({1, 2})), 8.0 / 3.0, 1e-14);
}

TEST(UnitBall, MixedExponentsMatchQuadrature) {
  // |x| + y^2 <= 1: the width in y is 2 sqrt(1 - |x|).
  const double q = oracle::simpson([](double x) { return 2.0 * std::sqrt(std::max(0.0, 1.0 - std::abs(x))); },
                                   -1.0, 1.0, 200000);
  EXPECT_NEAR(q, 8.0 / 3.0, 1e-6);
  EXPECT_NEAR(volume_unit_ball(vec({1, 2})), q, 1e-6);
}

TEST(UnitBall, LargeDimensionInLogSpace) {
  Vector b = Vector::Constant(400, 1.0);
  const double expected = 400.0 * std::log(2.0) - std::lgamma(401.0);
  EXPECT_NEAR(log_volume_unit_ball(b), expected, 1e-9 * std::abs(expected));
  EXPECT_THROW(volume_unit_ball(b), RangeError);
}

TEST(Ellipsoid, Volumes) {
  EXPECT_NEAR(Ellipsoid(vec({1}), vec({2}), 1.0).volume(), 2.0, 1e-14);
  EXPECT_NEAR(Ellipsoid(vec({4}), vec({2}), 1.0).volume(), 1.0, 1e-14);
  EXPECT_NEAR(Ellipsoid(vec({1, 1}), vec({2, 2}), 9.0).volume(), 9.0 * M_PI, 1e-12);
}

TEST(Ellipsoid, ScalingLaws) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(0.2, 5.0), ub(0.3, 4.0), ut(0.1, 10.0), us(0.5, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index d = 1 + trial % 6;
    Vector a(d), b(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      a[j] = ua(rng);
      b[j] = ub(rng);
    }
    const double tau = ut(rng);
    const double v1 = Ellipsoid(a, b, 1.0).volume();
    const double scaled = std::pow(tau, (1.0 / b.array()).sum()) * v1;
    EXPECT_NEAR(Ellipsoid(a, b, tau).volume(), scaled, 1e-12 * scaled);

    const Eigen::Index j = trial % d;
    const double s = us(rng);
    Vector a2 = a;
    a2[j] *= std::pow(s, b[j]);
    EXPECT_NEAR(Ellipsoid(a2, b, 1.0).volume(), v1 / s, 1e-12 * v1 / s);
  }
}

TEST(Ellipsoid, Membership) {
  const Ellipsoid disk(vec({1, 1}), vec({2, 2}), 2.0);
  EXPECT_TRUE(disk.contains(vec({1, 1})));
  EXPECT_FALSE(disk.contains(vec({1.5, 0})));
  EXPECT_TRUE(Ellipsoid(vec({3, 0.2, 7}), vec({0.5, 1, 3}), 0.1).contains(vec({0, 0, 0})));
  EXPECT_THROW(disk.contains(vec({1, 1, 1})), InputError);
}

TEST(Ellipsoid, ExactMembership) {
  const Ellipsoid disk(vec({1, 1}), vec({2, 2}), 2.0);
  const std::vector<mpq_class> on{mpq_class(1), mpq_class(-1)};
  const std::vector<mpq_class> off{mpq_class(1), mpq_class(1, 1000000000) + 1};
  EXPECT_TRUE(disk.contains_exact(on));
  EXPECT_FALSE(disk.contains_exact(off));
  EXPECT_THROW(Ellipsoid(vec({1}), vec({0.5}), 1.0).contains_exact(std::vector<mpq_class>{mpq_class(0)}),
               InputError);
}

TEST(QuasiNorm, Examples) {
  const Coefficients c = make_coefficients(vec({1, 2, 3}), vec({0.5, 1, 2}));
  const Vector x = vec({0.3, -1.2, 2.0});
  const auto zero = quasi_norm_combine(c, x, Vector::Zero(3));
  EXPECT_EQ(zero.lhs, quasi_norm_combine(c, x, Vector::Zero(3)).lhs);
  EXPECT_NEAR(zero.lhs, zero.rhs, 1e-15 * zero.rhs);
  EXPECT_EQ(quasi_norm_combine(c, x, Vector(-x)).lhs, 0.0);
}

TEST(QuasiNorm, RandomDraws) {
  const Coefficients c = make_coefficients(vec({1, 2, 3}), vec({0.5, 1, 2}));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const Vector x = vec({u(rng), u(rng), u(rng)});
    const Vector y = vec({u(rng), u(rng), u(rng)});
    const auto r = quasi_norm_combine(c, x, y);
    if (!(r.lhs <= r.rhs * (1.0 + 1e-12))) ++violations;
  }
  EXPECT_EQ(violations, 0);
}
