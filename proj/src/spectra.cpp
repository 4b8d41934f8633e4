#include "aniso/spectra.hpp"

#include "aniso/ellipsoid.hpp"

#include <algorithm>
#include <cmath>

namespace aniso {

namespace {

void require_omega(double omega) {
  if (!(omega > 0.0 && omega < 1.0)) throw InputError("omega must lie in (0, 1)");
}

}  // namespace

double korobov_eigenvalue_from_weight(double omega, double w) {
  require_omega(omega);
  return std::pow(omega, w);
}

double approx_number(const Coefficients& c, std::uint64_t n, const OrderStatisticOptions& opts) {
  return approx_number_from_weight(kth_smallest_weight(c, n, opts).value);
}

double korobov_eigenvalue(const Coefficients& c, double omega, std::uint64_t n, const OrderStatisticOptions& opts) {
  require_omega(omega);
  return korobov_eigenvalue_from_weight(omega, kth_smallest_weight(c, n, opts).value);
}

std::vector<SpectrumResult> spectrum(const Coefficients& c, std::span<const std::uint64_t> grid,
                                     std::optional<double> omega, const OrderStatisticOptions& opts) {
  if (omega) require_omega(*omega);
  const auto weights = kth_smallest_weights(c, grid, opts);
  std::vector<SpectrumResult> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SpectrumResult r;
    r.n = grid[i];
    r.weight = weights[i].value;
    r.a_n = approx_number_from_weight(r.weight);
    if (omega) {
      r.omega = omega;
      r.lambda_n = korobov_eigenvalue_from_weight(*omega, r.weight);
    }
    out.push_back(r);
  }
  return out;
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t n_max) {
  if (n_max < 1) throw InputError("n_max must be >= 1");
  std::vector<std::uint64_t> grid;
  for (std::uint64_t n = 1; n <= n_max; n *= 2) {
    grid.push_back(n);
    if (n > n_max / 2) break;
  }
  return grid;
}

EquivalenceDiagnostic equivalence_diagnostic(const Coefficients& c, std::span<const std::uint64_t> grid,
                                             const OrderStatisticOptions& opts) {
  if (!std::is_sorted(grid.begin(), grid.end()) || std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw InputError("diagnostic grid must be strictly increasing");
  }
  EquivalenceDiagnostic diag;
  diag.g = harmonic_smoothness(c);
  diag.log_constant = diag.g * Ellipsoid::doubled(c).log_volume();
  diag.constant = std::exp(diag.log_constant);
  for (const auto& s : spectrum(c, grid, std::nullopt, opts)) {
    const double log_ratio = diag.g * std::log(static_cast<double>(s.n)) + std::log(s.a_n) - diag.log_constant;
    diag.rows.push_back(EquivalenceRow{s.n, s.a_n, std::exp(log_ratio)});
  }
  return diag;
}

bool SandwichReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SandwichRow& r) { return r.ok; });
}

SandwichReport sandwich_check(const Coefficients& c, std::uint64_t m_first, std::uint64_t m_last, WeightMode mode,
                              const CountOptions& opts) {
  if (m_first < 1 || m_last < m_first) throw InputError("need 1 <= m_first <= m_last");
  SandwichReport report;
  report.shift = shift_constant(c);
  // p_d / g_d(2b) with g_d(2b) = 2 g_d(b)
  report.exponent = exponent_bound(c) / (2.0 * harmonic_smoothness(c));
  report.log_volume = Ellipsoid::doubled(c).log_volume();

  auto bound = [&](double base) {
    if (base <= 0.0) return 0.0;
    return std::exp(report.exponent * std::log(base) + report.log_volume);
  };
  for (std::uint64_t m = m_first; m <= m_last; ++m) {
    SandwichRow row;
    row.m = m;
    row.count = count_within_power_radius(c, m, mode, opts);
    row.lower = bound(static_cast<double>(m) - report.shift);
    row.upper = bound(static_cast<double>(m) + report.shift);
    const auto n = static_cast<double>(row.count);
    row.ok = row.lower <= n * (1.0 + kSandwichSlack) && n <= row.upper * (1.0 + kSandwichSlack);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace aniso
