#include "aniso/ellipsoid.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace aniso {

namespace {

// glibc's lgamma writes the global signgam; the reentrant form does not.
double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double checked_exp(double log_value, const char* what) {
  const double v = std::exp(log_value);
  if (!std::isfinite(v) || v == 0.0) {
    throw RangeError(std::string(what) + " is outside the double range (log value " +
                     std::to_string(log_value) + ")");
  }
  return v;
}

void require_positive_exponents(const Vector& e) {
  if (e.size() < 1) throw InputError("dimension must be >= 1");
  for (Eigen::Index j = 0; j < e.size(); ++j) {
    if (!std::isfinite(e[j]) || e[j] <= 0.0) throw InputError("exponents must be finite and positive");
  }
}

mpq_class pow_exact(const mpq_class& base, unsigned long exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

double log_volume_unit_ball(const Vector& exponents) {
  require_positive_exponents(exponents);
  double log_v = static_cast<double>(exponents.size()) * std::numbers::ln2;
  double inv_sum = 0.0;
  for (Eigen::Index j = 0; j < exponents.size(); ++j) {
    const double inv = 1.0 / exponents[j];
    log_v += log_gamma(1.0 + inv);
    inv_sum += inv;
  }
  return log_v - log_gamma(1.0 + inv_sum);
}

double volume_unit_ball(const Vector& exponents) {
  return checked_exp(log_volume_unit_ball(exponents), "unit ball volume");
}

Ellipsoid::Ellipsoid(Vector scale, Vector exponents, double t)
    : scale_(std::move(scale)), exponents_(std::move(exponents)), t_(t) {
  require_positive_exponents(exponents_);
  if (scale_.size() != exponents_.size()) throw InputError("scale and exponent vectors differ in length");
  for (Eigen::Index j = 0; j < scale_.size(); ++j) {
    if (!std::isfinite(scale_[j]) || scale_[j] <= 0.0) throw InputError("scale entries must be finite and positive");
  }
  if (!std::isfinite(t_) || t_ <= 0.0) throw InputError("ellipsoid radius t must be finite and positive");
}

double Ellipsoid::log_volume() const {
  const Vector inv = exponents_.cwiseInverse();
  return inv.sum() * std::log(t_) - scale_.array().log().matrix().dot(inv) + log_volume_unit_ball(exponents_);
}

double Ellipsoid::volume() const { return checked_exp(log_volume(), "ellipsoid volume"); }

Vector Ellipsoid::half_widths() const {
  Vector h(dim());
  for (Eigen::Index j = 0; j < dim(); ++j) h[j] = std::pow(t_ / scale_[j], 1.0 / exponents_[j]);
  return h;
}

void Ellipsoid::check_dim(Eigen::Index n) const {
  if (n != dim()) {
    throw InputError("point has dimension " + std::to_string(n) + ", ellipsoid has " + std::to_string(dim()));
  }
}

bool Ellipsoid::contains_exact(std::span<const mpq_class> x) const {
  check_dim(static_cast<Eigen::Index>(x.size()));
  mpq_class sum = 0;
  for (Eigen::Index j = 0; j < dim(); ++j) {
    const double e = exponents_[j];
    if (e != std::floor(e)) throw InputError("exact membership needs integer exponents");
    mpq_class v = x[static_cast<std::size_t>(j)];
    if (v < 0) v = -v;
    sum += mpq_class(scale_[j]) * pow_exact(v, static_cast<unsigned long>(e));
  }
  return sum <= mpq_class(t_);
}

QuasiNormPair quasi_norm_combine(const Coefficients& c, const Vector& x, const Vector& y) {
  if (x.size() != c.dim() || y.size() != c.dim()) throw InputError("vectors must have length d");
  const double p = exponent_bound(c);
  double sx = 0.0, sy = 0.0, sxy = 0.0;
  for (Eigen::Index j = 0; j < c.dim(); ++j) {
    const double e = 2.0 * c.b[j];
    sx += c.a[j] * std::pow(std::abs(x[j]), e);
    sy += c.a[j] * std::pow(std::abs(y[j]), e);
    sxy += c.a[j] * std::pow(std::abs(x[j] + y[j]), e);
  }
  return {std::pow(sxy, 1.0 / p), std::pow(sx, 1.0 / p) + std::pow(sy, 1.0 / p)};
}

}  // namespace aniso
