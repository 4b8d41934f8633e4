#pragma once

#include "aniso/types.hpp"

#include <json.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aniso {

enum class FamilyKind {
  explicit_list,  // finite list v_1, ..., v_L
  constant,       // c
  power,          // c * j^alpha
  logarithmic,    // c * (ln(j + 1))^alpha
  exponential,    // c * rho^j
  double_scale,   // c * (2 pi)^(2 b_j), b taken from the companion sequence
};

std::string to_string(FamilyKind kind);

/// A positive sequence indexed from j = 1, drawn from a closed catalog of
/// parametrized kinds. Closed forms are what let the tractability classifier
/// read limits analytically instead of guessing from samples.
class Family {
 public:
  static Family list(std::vector<double> values);
  static Family constant(double c);
  static Family power(double c, double alpha);
  static Family logarithmic(double c, double alpha);
  static Family exponential(double c, double rho);
  static Family double_scale(double c = 1.0);

  FamilyKind kind() const { return kind_; }
  double c() const { return c_; }
  double alpha() const { return alpha_; }
  double rho() const { return rho_; }
  std::span<const double> values() const { return values_; }

  /// Number of entries for explicit lists, nothing for closed-form kinds.
  std::optional<std::size_t> length() const;

  /// Value at index j >= 1. A double_scale family needs the smoothness
  /// sequence it is built on; every other kind ignores `companion`.
  double operator()(std::size_t j, const Family* companion = nullptr) const;

  /// Analytic monotonicity: true when the kind guarantees v_j <= v_{j+1} for
  /// every j. For double_scale this defers to the companion.
  bool non_decreasing(const Family* companion = nullptr) const;

  /// Analytic lower bound: true when inf_j v_j > 0 is guaranteed.
  bool bounded_away_from_zero() const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  Family(FamilyKind kind, double c, double alpha, double rho, std::vector<double> values);

  FamilyKind kind_;
  double c_ = 1.0;
  double alpha_ = 0.0;
  double rho_ = 1.0;
  std::vector<double> values_;
};

/// The first d scaling and smoothness coefficients, materialized.
struct Coefficients {
  Vector a;
  Vector b;

  Eigen::Index dim() const { return a.size(); }
};

/// Scaling sequence a, smoothness sequence b and the active dimension d.
class SequencePair {
 public:
  SequencePair(Family a, Family b, int d);

  /// Explicit lists of equal length; d is that length.
  static SequencePair from_lists(std::vector<double> a, std::vector<double> b);

  double a(std::size_t j) const { return a_(j, &b_); }
  double b(std::size_t j) const { return b_(j); }
  int dim() const { return d_; }

  const Family& a_family() const { return a_; }
  const Family& b_family() const { return b_; }

  SequencePair with_dim(int d) const { return SequencePair(a_, b_, d); }

  const Coefficients& coefficients() const { return coeffs_; }

 private:
  Family a_;
  Family b_;
  int d_;
  Coefficients coeffs_;
};

Coefficients make_coefficients(const Vector& a, const Vector& b);

/// g_d(b) = 1 / sum_{j<=d} 1/b_j.
double harmonic_smoothness(const Coefficients& c);
inline double harmonic_smoothness(const SequencePair& s) { return harmonic_smoothness(s.coefficients()); }

/// p_d = max(1, 2 b_1, ..., 2 b_d).
double exponent_bound(const Coefficients& c);
inline double exponent_bound(const SequencePair& s) { return exponent_bound(s.coefficients()); }

/// (sum_{j<=d} a_j 2^{-2 b_j})^{1/p_d}: the quasi-norm of a half-unit cube corner.
double shift_constant(const Coefficients& c);
inline double shift_constant(const SequencePair& s) { return shift_constant(s.coefficients()); }

// JSON schema shared with the CLI:
//   family   := [v1, v2, ...] | {"kind": "power", "c": 1.0, "alpha": 2.0} | ...
//   sequence := {"a": family, "b": family, "d": 3}
// "d" may be omitted when at least one side is an explicit list.
Family family_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Family& f);
SequencePair sequence_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SequencePair& s);

}  // namespace aniso
