#pragma once

#include "aniso/lattice.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aniso {

/// (1 + w)^{-1/2}: the singular value attached to lattice weight w.
inline double approx_number_from_weight(double w) { return 1.0 / std::sqrt(1.0 + w); }

/// omega^w
double korobov_eigenvalue_from_weight(double omega, double w);

/// a_n of the embedding W_2^{a,b}([0,1]^d) -> L_2, i.e. the n-th largest of
/// (1 + w(k))^{-1/2} over k in Z^d.
double approx_number(const Coefficients& c, std::uint64_t n, const OrderStatisticOptions& opts = {});

/// lambda_{d,n}: the n-th largest Korobov weight omega^{w(k)}, omega in (0, 1).
double korobov_eigenvalue(const Coefficients& c, double omega, std::uint64_t n,
                          const OrderStatisticOptions& opts = {});

struct SpectrumResult {
  std::uint64_t n = 0;
  double weight = 0.0;  // n-th smallest lattice weight
  double a_n = 0.0;
  std::optional<double> omega;
  std::optional<double> lambda_n;
};

/// a_n (and lambda_n when omega is given) over a grid, in grid order.
std::vector<SpectrumResult> spectrum(const Coefficients& c, std::span<const std::uint64_t> grid,
                                     std::optional<double> omega = std::nullopt,
                                     const OrderStatisticOptions& opts = {});

/// 1, 2, 4, ..., up to n_max.
std::vector<std::uint64_t> geometric_grid(std::uint64_t n_max);

struct EquivalenceRow {
  std::uint64_t n;
  double a_n;
  double ratio;  // n^{g} a_n / vol(B_{a,2b})^{g}
};

struct EquivalenceDiagnostic {
  double g = 0.0;             // g_d(b)
  double log_constant = 0.0;  // g * ln vol(B_{a,2b})
  double constant = 0.0;      // exp(log_constant); 0 or inf when outside the double range
  std::vector<EquivalenceRow> rows;
};

/// Ratios that tend to 1 as n grows. Computed in log space so the constant
/// may under- or overflow without affecting the ratios.
EquivalenceDiagnostic equivalence_diagnostic(const Coefficients& c, std::span<const std::uint64_t> grid,
                                             const OrderStatisticOptions& opts = {});

struct SandwichRow {
  std::uint64_t m;
  double lower;         // (m - C)_+^{p/(2g)} vol(B_{a,2b})
  std::uint64_t count;  // C(m) = #{k : w(k) <= m^p}
  double upper;         // (m + C)^{p/(2g)} vol(B_{a,2b})
  bool ok;
};

struct SandwichReport {
  double shift = 0.0;       // C_{a,b,d}
  double exponent = 0.0;    // p_d / (2 g_d(b))
  double log_volume = 0.0;  // ln vol(B_{a,2b})
  std::vector<SandwichRow> rows;

  bool all_ok() const;
};

/// Relative slack allowed when comparing the integer count with the
/// floating-point bounds; the bounds can be attained exactly (d = 1).
inline constexpr double kSandwichSlack = 1e-12;

/// Checks lower <= C(m) <= upper for m in [m_first, m_last]. The bounds come
/// from covering the lattice cubes by dilated copies of B_{a,2b}, with the
/// volume factor and C_{a,b,d} on both sides. Violations are reported, not thrown.
SandwichReport sandwich_check(const Coefficients& c, std::uint64_t m_first, std::uint64_t m_last,
                              WeightMode mode = WeightMode::float64, const CountOptions& opts = {});

}  // namespace aniso
