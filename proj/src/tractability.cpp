#include "aniso/tractability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aniso {

// Complexity -----------------------------------------------------------------

namespace {

void require_accuracy(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("epsilon must lie in (0, 1)");
}

void require_omega(double omega) {
  if (!(omega > 0.0 && omega < 1.0)) throw InputError("omega must lie in (0, 1)");
}

CountOptions strict_options(const CountOptions& opts) {
  CountOptions o = opts;
  o.comparison = Comparison::strict;
  return o;
}

}  // namespace

double sobolev_threshold(double eps) {
  require_accuracy(eps);
  return 1.0 / (eps * eps) - 1.0;
}

double korobov_threshold(double omega, double log_eps) {
  require_omega(omega);
  if (!(log_eps < 0.0)) throw InputError("log epsilon must be negative");
  return (-2.0 * log_eps) / (-std::log(omega));
}

std::uint64_t complexity_I(const Coefficients& c, double eps, WeightMode mode, const CountOptions& opts) {
  return count(c, sobolev_threshold(eps), mode, strict_options(opts));
}

std::uint64_t complexity_APP(const Coefficients& c, double omega, double eps, WeightMode mode,
                             const CountOptions& opts) {
  require_accuracy(eps);
  return complexity_APP_log(c, omega, std::log(eps), mode, opts);
}

std::uint64_t complexity_APP_log(const Coefficients& c, double omega, double log_eps, WeightMode mode,
                                 const CountOptions& opts) {
  return count(c, korobov_threshold(omega, log_eps), mode, strict_options(opts));
}

BridgeResult bridge_app_to_i(const Coefficients& c, double omega, double eps, WeightMode mode,
                             const CountOptions& opts) {
  require_accuracy(eps);
  BridgeResult r;
  r.eps = eps;
  const double t = korobov_threshold(omega, std::log(eps));
  r.mapped_eps = 1.0 / std::sqrt(t + 1.0);
  r.mapped_log_eps = -0.5 * std::log1p(t);
  r.source_count = complexity_APP(c, omega, eps, mode, opts);
  r.target_count = complexity_I(c, r.mapped_eps, mode, opts);
  r.equal_counts = r.source_count == r.target_count;
  return r;
}

BridgeResult bridge_i_to_app(const Coefficients& c, double omega, double eps, WeightMode mode,
                             const CountOptions& opts) {
  require_omega(omega);
  BridgeResult r;
  r.eps = eps;
  r.mapped_log_eps = 0.5 * sobolev_threshold(eps) * std::log(omega);
  r.mapped_eps = std::exp(r.mapped_log_eps);
  r.source_count = complexity_I(c, eps, mode, opts);
  r.target_count = complexity_APP_log(c, omega, r.mapped_log_eps, mode, opts);
  r.equal_counts = r.source_count == r.target_count;
  return r;
}

void require_identity(const BridgeResult& r) {
  if (!r.equal_counts) {
    throw IdentityViolation("complexity bridge mismatch at eps = " + std::to_string(r.eps) + ": " +
                            std::to_string(r.source_count) + " vs " + std::to_string(r.target_count));
  }
}

// Three-valued logic ------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

nlohmann::json to_json(Verdict v) {
  if (v == Verdict::unknown) return nullptr;
  return v == Verdict::holds;
}

namespace {

Verdict both(Verdict x, Verdict y) {
  if (x == Verdict::fails || y == Verdict::fails) return Verdict::fails;
  if (x == Verdict::unknown || y == Verdict::unknown) return Verdict::unknown;
  return Verdict::holds;
}

Verdict from_bool(bool b) { return b ? Verdict::holds : Verdict::fails; }

}  // namespace

Verdict Extended::is_positive() const {
  switch (kind) {
    case Kind::finite: return from_bool(value > 0.0);
    case Kind::infinite: return Verdict::holds;
    case Kind::unknown: return Verdict::unknown;
  }
  return Verdict::unknown;
}

Verdict Extended::is_infinite() const {
  switch (kind) {
    case Kind::finite: return Verdict::fails;
    case Kind::infinite: return Verdict::holds;
    case Kind::unknown: return Verdict::unknown;
  }
  return Verdict::unknown;
}

nlohmann::json Extended::to_json() const {
  switch (kind) {
    case Kind::finite: return value;
    case Kind::infinite: return "inf";
    case Kind::unknown: return nullptr;
  }
  return nullptr;
}

// Asymptotic functionals ----------------------------------------------------------

namespace {

using E = Extended;

// Polynomial exponents closer than this are treated as the same boundary case.
constexpr double kExponentTie = 1e-12;

ScalingAsymptotics all_unknown_scaling() { return {}; }

ScalingAsymptotics constant_scaling(double c) {
  return {E::finite(0.0), E::finite(0.0), E::finite(0.0), E::finite(c), E::finite(0.0), E::finite(0.0), E::finite(c)};
}

// a_j outgrows every polynomial; only the log-scale liminfs can stay finite.
ScalingAsymptotics super_polynomial(E liminf_log_over_j, E liminf_loglog_over_j, E lim_log_over_log_j) {
  return {liminf_log_over_j, liminf_loglog_over_j, lim_log_over_log_j, E::infinite(), E::infinite(),
          E::infinite(), E::unknown()};
}

ScalingAsymptotics power_scaling(double c, double alpha) {
  if (alpha == 0.0) return constant_scaling(c);
  if (alpha < 0.0) return all_unknown_scaling();
  return {E::finite(0.0), E::finite(0.0), E::finite(alpha), E::infinite(), E::infinite(),
          E::finite(alpha), E::finite(c)};
}

ScalingAsymptotics logarithmic_scaling(double c, double alpha) {
  if (alpha == 0.0) return constant_scaling(c);
  if (alpha < 0.0) return all_unknown_scaling();
  // c (ln(j+1))^alpha / ln j tends to infinity, c, or 0.
  const E over_log = alpha > 1.0 ? E::infinite() : alpha == 1.0 ? E::finite(c) : E::finite(0.0);
  // unbounded but sub-polynomial: exponent 0 with infinite coefficient
  return {E::finite(0.0), E::finite(0.0), E::finite(0.0), E::infinite(), over_log, E::finite(0.0), E::infinite()};
}

// a_j = c (2 pi)^{2 b_j} = c exp(kappa b_j)
ScalingAsymptotics double_scale_scaling(double c, const Family& b) {
  const double kappa = 2.0 * std::log(2.0 * std::numbers::pi);
  switch (b.kind()) {
    case FamilyKind::explicit_list:
    case FamilyKind::double_scale: return all_unknown_scaling();
    case FamilyKind::constant: return constant_scaling(c * std::exp(kappa * b.c()));
    case FamilyKind::power: {
      const double r = b.c(), beta = b.alpha();
      if (beta == 0.0) return constant_scaling(c * std::exp(kappa * r));
      if (beta < 0.0) return all_unknown_scaling();
      // ln a_j ~ kappa r j^beta
      const E l1 = beta > 1.0 ? E::infinite() : beta == 1.0 ? E::finite(kappa * r) : E::finite(0.0);
      const E l2 = beta >= 1.0 ? E::infinite() : E::finite(0.0);
      return super_polynomial(l1, l2, E::infinite());
    }
    case FamilyKind::logarithmic: {
      const double r = b.c(), alpha = b.alpha();
      if (alpha == 0.0) return constant_scaling(c * std::exp(kappa * r));
      if (alpha < 0.0) return all_unknown_scaling();
      // ln a_j ~ kappa r (ln j)^alpha
      if (alpha > 1.0) return super_polynomial(E::finite(0.0), E::finite(0.0), E::infinite());
      // a_j = c (j+1)^{kappa r}: a power sequence
      if (alpha == 1.0) return power_scaling(c, kappa * r);
      // exp(kappa r (ln j)^alpha), alpha < 1: unbounded, beats ln j, sub-polynomial
      return {E::finite(0.0), E::finite(0.0), E::finite(0.0), E::infinite(), E::infinite(), E::finite(0.0),
              E::infinite()};
    }
    case FamilyKind::exponential: {
      if (b.rho() == 1.0) return constant_scaling(c * std::exp(kappa * b.c()));
      if (b.rho() < 1.0) return all_unknown_scaling();
      return super_polynomial(E::infinite(), E::infinite(), E::infinite());
    }
  }
  return all_unknown_scaling();
}

}  // namespace

Extended ScalingAsymptotics::lim_over_power(double gamma) const {
  if (!(gamma > 0.0)) throw InputError("power exponent must be positive");
  switch (polynomial_exponent.kind) {
    case Extended::Kind::unknown: return E::unknown();
    case Extended::Kind::infinite: return E::infinite();
    case Extended::Kind::finite: break;
  }
  const double e = polynomial_exponent.value;
  if (std::abs(e - gamma) <= kExponentTie * std::max(1.0, gamma)) return polynomial_coefficient;
  return e > gamma ? E::infinite() : E::finite(0.0);
}

ScalingAsymptotics scaling_asymptotics(const Family& a, const Family& b) {
  switch (a.kind()) {
    case FamilyKind::explicit_list: return all_unknown_scaling();
    case FamilyKind::constant: return constant_scaling(a.c());
    case FamilyKind::power: return power_scaling(a.c(), a.alpha());
    case FamilyKind::logarithmic: return logarithmic_scaling(a.c(), a.alpha());
    case FamilyKind::exponential:
      if (a.rho() == 1.0) return constant_scaling(a.c());
      if (a.rho() < 1.0) return all_unknown_scaling();
      // ln a_j / j -> ln rho > 0; everything else is infinite
      return super_polynomial(E::finite(std::log(a.rho())), E::infinite(), E::infinite());
    case FamilyKind::double_scale: return double_scale_scaling(a.c(), b);
  }
  return all_unknown_scaling();
}

SmoothnessAsymptotics smoothness_asymptotics(const Family& b) {
  const SmoothnessAsymptotics divergent{Verdict::fails, Verdict::fails, E::finite(0.0), E::finite(0.0)};
  switch (b.kind()) {
    case FamilyKind::explicit_list:
    case FamilyKind::double_scale: return {};
    case FamilyKind::constant: return divergent;
    case FamilyKind::power: {
      const double beta = b.alpha();
      if (beta > 1.0) return {Verdict::holds, Verdict::holds, E::infinite(), E::infinite()};
      // harmonic sum grows like ln d
      if (beta == 1.0) return {Verdict::fails, Verdict::holds, E::finite(b.c()), E::infinite()};
      return divergent;
    }
    case FamilyKind::logarithmic: return divergent;
    case FamilyKind::exponential:
      if (b.rho() > 1.0) return {Verdict::holds, Verdict::holds, E::infinite(), E::infinite()};
      return divergent;
  }
  return {};
}

// Classifier -------------------------------------------------------------------

std::string weak_notion_name(const WeakIndex& st) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.15g,%.15g)-WT", st.s, st.t);
  return buf;
}

const NotionVerdict* TractabilityVerdict::find(const std::string& notion) const {
  for (const auto* list : {&notions, &ec_notions}) {
    for (const auto& n : *list) {
      if (n.notion == notion) return &n;
    }
  }
  return nullptr;
}

nlohmann::json TractabilityVerdict::to_json() const {
  auto rows = [](const std::vector<NotionVerdict>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : v) {
      arr.push_back({{"notion", n.notion}, {"holds", aniso::to_json(n.holds)}, {"rule", n.rule}, {"evidence", n.evidence}});
    }
    return arr;
  };
  return {{"problem_I", rows(notions)}, {"problem_APP", rows(ec_notions)}};
}

namespace {

void require_regulated(const Family& a, const Family& b) {
  if (!a.non_decreasing(&b)) throw InputError("scaling sequence a is not non-decreasing");
  if (!b.bounded_away_from_zero()) throw InputError("smoothness sequence b is not bounded away from zero");
  std::size_t prefix = 64;
  if (auto n = a.length()) prefix = std::min(prefix, *n);
  if (auto n = b.length()) prefix = std::min(prefix, *n);
  // Closed-form families may leave the double range within the prefix; the
  // check stops at the first term that overflows.
  double prev = a(1, &b);
  for (std::size_t j = 2; j <= prefix; ++j) {
    double next = 0.0;
    try {
      next = a(j, &b);
    } catch (const InputError&) {
      if (a.kind() == FamilyKind::explicit_list) throw;
      break;
    }
    if (prev > next) throw InputError("scaling sequence a decreases at j = " + std::to_string(j - 1));
    prev = next;
  }
}

NotionVerdict weak_verdict(const WeakIndex& st, const ScalingAsymptotics& sa) {
  if (!(st.s > 0.0 && st.t > 0.0)) throw InputError("(s,t) must be positive");
  NotionVerdict v;
  v.notion = weak_notion_name(st);
  v.evidence = nlohmann::json::object();
  if (std::max(st.s / 2.0, st.t) > 1.0) {
    v.holds = Verdict::holds;
    v.rule = "max(s/2, t) > 1: always holds";
    v.evidence["max_s_half_t"] = std::max(st.s / 2.0, st.t);
  } else if (st.s == 2.0 && st.t == 1.0) {
    v.holds = sa.lim.is_infinite();
    v.rule = "lim a_j = inf";
    v.evidence["lim_a"] = sa.lim.to_json();
  } else if (st.s == 2.0) {
    v.holds = sa.lim_over_log_j.is_infinite();
    v.rule = "lim a_j / ln j = inf";
    v.evidence["lim_a_over_log_j"] = sa.lim_over_log_j.to_json();
  } else {
    const double gamma = (2.0 - st.s) / st.s;
    const Extended lim = sa.lim_over_power(gamma);
    v.holds = lim.is_infinite();
    v.rule = "lim a_j / j^((2-s)/s) = inf";
    v.evidence["gamma"] = gamma;
    v.evidence["lim_a_over_j_pow_gamma"] = lim.to_json();
  }
  return v;
}

NotionVerdict as_ec(const NotionVerdict& i_verdict, std::string ec_name, std::string correspondence) {
  NotionVerdict v = i_verdict;
  v.notion = std::move(ec_name);
  v.evidence["via"] = std::move(correspondence);
  return v;
}

}  // namespace

TractabilityVerdict classify(const Family& a, const Family& b, std::span<const WeakIndex> st) {
  require_regulated(a, b);
  const ScalingAsymptotics sa = scaling_asymptotics(a, b);
  const SmoothnessAsymptotics sb = smoothness_asymptotics(b);

  TractabilityVerdict out;

  NotionVerdict spt;
  spt.notion = "SPT";
  spt.holds = both(sb.inverse_sum_finite, sa.liminf_log_over_j.is_positive());
  spt.rule = "sum 1/b_j < inf and liminf ln a_j / j > 0";
  spt.evidence = {{"inverse_sum_b_finite", to_json(sb.inverse_sum_finite)},
                  {"liminf_log_a_over_j", sa.liminf_log_over_j.to_json()}};
  NotionVerdict pt = spt;
  pt.notion = "PT";

  NotionVerdict qpt;
  qpt.notion = "QPT";
  qpt.holds = both(sb.log_normalized_sum_bounded, sa.liminf_loglog_over_j.is_positive());
  qpt.rule = "sup_d sum_{j<=d} 1/b_j / (1 + ln d) < inf and liminf (1 + ln j) ln a_j / j > 0";
  qpt.evidence = {{"log_normalized_inverse_sum_bounded", to_json(sb.log_normalized_sum_bounded)},
                  {"liminf_loglog_a_over_j", sa.liminf_loglog_over_j.to_json()}};

  NotionVerdict uwt;
  uwt.notion = "UWT";
  uwt.holds = sa.lim_log_over_log_j.is_infinite();
  uwt.rule = "lim ln a_j / ln j = inf";
  uwt.evidence = {{"lim_log_a_over_log_j", sa.lim_log_over_log_j.to_json()}};

  NotionVerdict wt;
  wt.notion = "WT";
  const Extended over_j = sa.lim_over_power(1.0);
  wt.holds = over_j.is_infinite();
  wt.rule = "lim a_j / j = inf";
  wt.evidence = {{"lim_a_over_j", over_j.to_json()}};

  out.notions = {spt, pt, qpt, uwt, wt};
  for (const auto& idx : st) out.notions.push_back(weak_verdict(idx, sa));

  out.ec_notions.push_back(as_ec(spt, "EC-SPT", "SPT of I"));
  out.ec_notions.push_back(as_ec(pt, "EC-PT", "PT of I"));
  out.ec_notions.push_back(as_ec(qpt, "EC-QPT", "QPT of I"));
  out.ec_notions.push_back(as_ec(uwt, "EC-UWT", "UWT of I"));
  out.ec_notions.push_back(as_ec(weak_verdict({2.0, 1.0}, sa), "EC-WT", "EC-(1,1)-WT, i.e. (2,1)-WT of I"));
  for (const auto& idx : st) {
    const WeakIndex doubled{2.0 * idx.s, idx.t};
    out.ec_notions.push_back(
        as_ec(weak_verdict(doubled, sa), "EC-" + weak_notion_name(idx), weak_notion_name(doubled) + " of I"));
  }

  if (!hierarchy_consistent(out)) throw std::logic_error("tractability verdicts violate SPT => PT => QPT => UWT => WT");
  return out;
}

TractabilityVerdict classify_b_only(const Family& b, std::span<const WeakIndex> st) {
  if (!b.non_decreasing()) throw InputError("smoothness sequence b must be non-decreasing");
  return classify(Family::double_scale(1.0), b, st);
}

bool hierarchy_consistent(const TractabilityVerdict& v) {
  const char* chain[] = {"SPT", "PT", "QPT", "UWT", "WT"};
  bool seen_holds = false;
  for (const char* name : chain) {
    const NotionVerdict* n = v.find(name);
    if (n == nullptr) return false;
    if (seen_holds && n->holds == Verdict::fails) return false;
    seen_holds = seen_holds || n->holds == Verdict::holds;
  }
  return true;
}

// Probe --------------------------------------------------------------------------

std::vector<ProbeCell> empirical_probe(const SequencePair& seq, double s, double t, std::span<const double> eps_grid,
                                       std::span<const int> d_grid, const CountOptions& opts) {
  if (!(s > 0.0 && t > 0.0)) throw InputError("(s,t) must be positive");
  std::vector<ProbeCell> out;
  for (int d : d_grid) {
    for (double eps : eps_grid) {
      require_accuracy(eps);
      ProbeCell cell;
      cell.eps = eps;
      cell.d = d;
      cell.ratio = std::numeric_limits<double>::quiet_NaN();
      try {
        const auto n = complexity_I(seq.with_dim(d).coefficients(), eps, WeightMode::float64, opts);
        cell.n = n;
        cell.ratio = std::log(static_cast<double>(n)) / (std::pow(eps, -s) + std::pow(static_cast<double>(d), t));
        cell.status = "ok";
      } catch (const CapacityError& e) {
        cell.status = std::string("capacity: ") + e.what();
      } catch (const InputError& e) {
        cell.status = std::string("input: ") + e.what();
      }
      out.push_back(std::move(cell));
    }
  }
  return out;
}

}  // namespace aniso
