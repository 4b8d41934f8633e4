#pragma once

#include "aniso/lattice.hpp"
#include "aniso/sequence.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aniso {

// Information complexity --------------------------------------------------------
//
// n(eps, S_d) = min{n : a_{n+1}(S_d) <= eps} is the number of lattice points
// whose singular value exceeds eps, i.e. a strict count:
//   Sobolev embedding I_d:  w(k) < eps^{-2} - 1
//   Korobov APP_d:          w(k) < ln(eps^{-2}) / ln(omega^{-1})

double sobolev_threshold(double eps);
double korobov_threshold(double omega, double log_eps);

std::uint64_t complexity_I(const Coefficients& c, double eps, WeightMode mode = WeightMode::float64,
                           const CountOptions& opts = {});
std::uint64_t complexity_APP(const Coefficients& c, double omega, double eps,
                             WeightMode mode = WeightMode::float64, const CountOptions& opts = {});
/// Same count with eps given by its natural log; needed once eps underflows.
std::uint64_t complexity_APP_log(const Coefficients& c, double omega, double log_eps,
                                 WeightMode mode = WeightMode::float64, const CountOptions& opts = {});

struct BridgeResult {
  double eps = 0.0;             // input accuracy
  double mapped_eps = 0.0;      // accuracy on the other problem (may underflow to 0)
  double mapped_log_eps = 0.0;  // its natural log, always representable
  std::uint64_t source_count = 0;
  std::uint64_t target_count = 0;
  bool equal_counts = false;
};

/// n(eps, APP_d) against n((ln eps^{-2} / ln omega^{-1} + 1)^{-1/2}, I_d).
BridgeResult bridge_app_to_i(const Coefficients& c, double omega, double eps,
                             WeightMode mode = WeightMode::float64, const CountOptions& opts = {});
/// n(eps, I_d) against n(omega^{(eps^{-2} - 1)/2}, APP_d).
BridgeResult bridge_i_to_app(const Coefficients& c, double omega, double eps,
                             WeightMode mode = WeightMode::float64, const CountOptions& opts = {});

/// Throws IdentityViolation unless both counts agree.
void require_identity(const BridgeResult& r);

// Classification ----------------------------------------------------------------

enum class Verdict { holds, fails, unknown };
std::string to_string(Verdict v);
nlohmann::json to_json(Verdict v);

/// A limit (or liminf) read off a closed form: finite, +infinity, or undecided.
struct Extended {
  enum class Kind { finite, infinite, unknown };
  Kind kind = Kind::unknown;
  double value = 0.0;

  static Extended finite(double v) { return {Kind::finite, v}; }
  static Extended infinite() { return {Kind::infinite, 0.0}; }
  static Extended unknown() { return {Kind::unknown, 0.0}; }

  Verdict is_positive() const;
  Verdict is_infinite() const;
  nlohmann::json to_json() const;

  friend bool operator==(const Extended&, const Extended&) = default;
};

/// Growth functionals of a regulated scaling sequence a.
struct ScalingAsymptotics {
  Extended liminf_log_over_j;        // liminf ln a_j / j
  Extended liminf_loglog_over_j;     // liminf (1 + ln j) ln a_j / j
  Extended lim_log_over_log_j;       // lim ln a_j / ln j
  Extended lim;                      // lim a_j
  Extended lim_over_log_j;           // lim a_j / ln j
  Extended polynomial_exponent;      // e with a_j = Theta(j^e); infinite when super-polynomial
  Extended polynomial_coefficient;   // lim a_j / j^e at that e

  /// lim a_j / j^gamma for gamma > 0.
  Extended lim_over_power(double gamma) const;
};

/// Summability functionals of a smoothness sequence b.
struct SmoothnessAsymptotics {
  Verdict inverse_sum_finite = Verdict::unknown;      // sum_j 1/b_j < inf
  Verdict log_normalized_sum_bounded = Verdict::unknown;  // sup_d sum_{j<=d} (1/b_j) / (1 + ln d) < inf
  Extended liminf_over_j;                             // liminf b_j / j
  Extended liminf_log_over_j;                         // liminf (1 + ln j) b_j / j
};

/// Closed-form functionals for catalog families. Explicit lists and
/// non-regulated parameter ranges yield unknown entries.
ScalingAsymptotics scaling_asymptotics(const Family& a, const Family& b);
SmoothnessAsymptotics smoothness_asymptotics(const Family& b);

struct WeakIndex {
  double s;
  double t;
};

struct NotionVerdict {
  std::string notion;
  Verdict holds = Verdict::unknown;
  std::string rule;          // the deciding condition
  nlohmann::json evidence;   // functional values that decided it
};

struct TractabilityVerdict {
  std::vector<NotionVerdict> notions;     // the Sobolev problem I
  std::vector<NotionVerdict> ec_notions;  // EC notions of the Korobov problem APP

  const NotionVerdict* find(const std::string& notion) const;
  nlohmann::json to_json() const;
};

/// "(s,t)-WT" with s and t printed in shortest form, e.g. "(2,0.5)-WT".
std::string weak_notion_name(const WeakIndex& st);

/// Verdicts for SPT, PT, QPT, UWT, WT and each (s,t)-WT, plus the matching
/// EC verdicts for APP (I is (2s,t)-WT iff APP is EC-(s,t)-WT, and likewise
/// for UWT, QPT, PT, SPT). EC-WT is reported as EC-(1,1)-WT, i.e. through
/// (2,1)-WT of I. Requires a non-decreasing and inf b > 0, checked both
/// analytically and on a prefix; throws InputError otherwise.
TractabilityVerdict classify(const Family& a, const Family& b, std::span<const WeakIndex> st = {});

/// Unweighted spaces: a_j = (2 pi)^{2 b_j} with b non-decreasing.
TractabilityVerdict classify_b_only(const Family& b, std::span<const WeakIndex> st = {});

/// SPT => PT => QPT => UWT => WT never has a "holds" followed by a "fails".
bool hierarchy_consistent(const TractabilityVerdict& v);

// Empirical probe ---------------------------------------------------------------

struct ProbeCell {
  double eps = 0.0;
  int d = 0;
  std::optional<std::uint64_t> n;  // empty when the count was unavailable
  double ratio = 0.0;              // ln n / (eps^{-s} + d^t); NaN when unavailable
  std::string status;              // "ok" or the error that made the cell unavailable
};

/// ln n(eps, I_d) / (eps^{-s} + d^t) over a grid. Heuristic evidence only:
/// finite grids cannot decide a limit. Rows are ordered d-major, then eps.
std::vector<ProbeCell> empirical_probe(const SequencePair& seq, double s, double t, std::span<const double> eps_grid,
                                       std::span<const int> d_grid, const CountOptions& opts = {});

}  // namespace aniso
