#pragma once

#include "aniso/sequence.hpp"

#include <gmpxx.h>

#include <cmath>
#include <span>

namespace aniso {

/// log vol{x : sum |x_j|^{e_j} <= 1} = d ln 2 + sum lnGamma(1 + 1/e_j) - lnGamma(1 + sum 1/e_j).
double log_volume_unit_ball(const Vector& exponents);

/// Linear volume of the generalized unit ball. Throws RangeError when the
/// value over- or underflows a double.
double volume_unit_ball(const Vector& exponents);

/// The generalized ellipsoid {x in R^d : sum_j a_j |x_j|^{e_j} <= t}.
class Ellipsoid {
 public:
  Ellipsoid(Vector scale, Vector exponents, double t = 1.0);

  /// B_{a,b}(t) for the first d coefficients of `c`.
  static Ellipsoid from(const Coefficients& c, double t = 1.0) { return Ellipsoid(c.a, c.b, t); }
  /// B_{a,2b}(t), the body whose volume fixes the sharp constant of a_n.
  static Ellipsoid doubled(const Coefficients& c, double t = 1.0) { return Ellipsoid(c.a, 2.0 * c.b, t); }

  Eigen::Index dim() const { return scale_.size(); }
  const Vector& scale() const { return scale_; }
  const Vector& exponents() const { return exponents_; }
  double radius() const { return t_; }

  /// t^{sum 1/e_j} * prod a_j^{-1/e_j} * vol(unit ball).
  double log_volume() const;
  double volume() const;

  /// (t / a_j)^{1/e_j}: half side lengths of the bounding box.
  Vector half_widths() const;

  /// sum_j a_j |x_j|^{e_j}
  template <typename Derived>
  double gauge(const Eigen::MatrixBase<Derived>& x) const {
    check_dim(x.size());
    double sum = 0.0;
    for (Eigen::Index j = 0; j < dim(); ++j) sum += scale_[j] * std::pow(std::abs(x[j]), exponents_[j]);
    return sum;
  }

  /// gauge(x) <= t * (1 + rel_tol). The default compares the computed sum exactly.
  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x, double rel_tol = 0.0) const {
    return gauge(x) <= t_ * (1.0 + rel_tol);
  }

  /// Exact test for rational points. Requires integer exponents; the scale and
  /// radius are taken as the exact rationals their doubles represent.
  bool contains_exact(std::span<const mpq_class> x) const;

 private:
  void check_dim(Eigen::Index n) const;

  Vector scale_;
  Vector exponents_;
  double t_;
};

struct QuasiNormPair {
  double lhs;  // (sum a_j |x_j + y_j|^{2 b_j})^{1/p_d}
  double rhs;  // (sum a_j |x_j|^{2 b_j})^{1/p_d} + (sum a_j |y_j|^{2 b_j})^{1/p_d}
};

/// Both sides of the p_d-quasi-triangle inequality for the weight
/// sum a_j |x_j|^{2 b_j}. lhs <= rhs holds for every x, y.
QuasiNormPair quasi_norm_combine(const Coefficients& c, const Vector& x, const Vector& y);

}  // namespace aniso
