#pragma once

#include "aniso/sequence.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aniso {

using Rational = mpq_class;

enum class Comparison { strict, non_strict };
enum class WeightMode { float64, exact };

// Lattice weights w(k) = sum_j a_j |k_j|^{2 b_j} for k in Z^d.
//
// Float mode defines w(k) as a left fold over the coordinates in
// canonical_order(), each term evaluated as a_j * pow(|k_j|, 2 b_j). Every
// routine below (recursive count, heap enumeration, bisection) evaluates that
// same expression, so they agree bit for bit and ties are reproducible.
// Exact mode uses GMP rationals and needs 2 b_j integral (exact_eligible).

/// 2 b_j is a positive integer for every j.
bool exact_eligible(const Coefficients& c);

/// Decreasing b, then decreasing a, then increasing index. Independent of any
/// threshold, so the coordinates with the widest range come last.
std::vector<int> canonical_order(const Coefficients& c);

template <typename Scalar>
class WeightModel {
 public:
  explicit WeightModel(const Coefficients& c);

  int dim() const { return static_cast<int>(order_.size()); }
  std::span<const int> order() const { return order_; }

  /// a |k|^{2b} for the coordinate at canonical position `pos`, k >= 0.
  Scalar term(int pos, std::int64_t k) const;

  /// floor((budget / a)^{1/(2b)}) for position `pos`; only a starting guess.
  std::int64_t estimate_reach(int pos, double budget) const;

  /// Canonical weight of a point given by coordinate index (signs ignored).
  Scalar weight(std::span<const std::int64_t> k) const;

  /// Canonical weight of a point given in canonical position order, k >= 0.
  Scalar weight_by_position(std::span<const std::int32_t> k) const;

  static double to_double(const Scalar& s);

 private:
  std::vector<int> order_;
  std::vector<double> scale_;
  std::vector<double> exponent_;
  std::vector<Rational> exact_scale_;
  std::vector<unsigned long> exact_exponent_;
};

/// Float weight of a point, coordinates indexed 1..d as usual (0-based array).
double weight(const Coefficients& c, std::span<const std::int64_t> k);

struct CountOptions {
  Comparison comparison = Comparison::non_strict;
  /// Float mode only. With tolerance tau > 0 a point with |w - T| <= tau is
  /// treated as a tie: non-strict counts it, strict does not.
  double tolerance = 0.0;
  unsigned threads = 1;
  std::uint64_t coordinate_cap = std::uint64_t{1} << 31;
};

/// #{k in Z^d : w(k) < T} or #{... <= T}. The outermost coordinate may be split
/// across `opts.threads` workers; the integer sum does not depend on the split.
template <typename Scalar>
std::uint64_t count_points(const WeightModel<Scalar>& model, const Scalar& threshold, const CountOptions& opts);

std::uint64_t count(const Coefficients& c, double threshold, const CountOptions& opts = {});
std::uint64_t count_exact(const Coefficients& c, const Rational& threshold, const CountOptions& opts = {});
/// Dispatches on mode; in exact mode the double threshold is taken at its exact binary value.
std::uint64_t count(const Coefficients& c, double threshold, WeightMode mode, const CountOptions& opts);

/// C(m) = #{k : w(k) <= m^{p_d}}.
std::uint64_t count_within_power_radius(const Coefficients& c, std::uint64_t m,
                                        WeightMode mode = WeightMode::float64, const CountOptions& opts = {});

template <typename Scalar>
struct WeightLevel {
  Scalar weight;
  std::uint64_t multiplicity;  // lattice points attaining `weight`
  std::uint64_t cumulative;    // lattice points with weight <= `weight`
};

/// Distinct weights in strictly increasing order. Best-first search over the
/// non-negative orthant; a point is pushed only by its canonical parent (the
/// point with its last nonzero coordinate decremented), so no visited set is
/// needed. Each orthant point stands for 2^{#nonzero} lattice points.
template <typename Scalar>
class IncreasingWeights {
 public:
  explicit IncreasingWeights(const Coefficients& c, std::size_t heap_cap = 100'000'000);

  WeightLevel<Scalar> next();
  std::size_t frontier_size() const { return heap_.size(); }

 private:
  struct Node {
    Scalar weight;
    std::vector<std::int32_t> k;
    int last;
  };
  struct Later {
    bool operator()(const Node& x, const Node& y) const { return x.weight > y.weight; }
  };

  void expand(Node node, std::uint64_t& multiplicity);

  WeightModel<Scalar> model_;
  std::size_t heap_cap_;
  std::vector<Node> heap_;
  std::uint64_t cumulative_ = 0;
};

/// Levels until the cumulative multiplicity reaches limit_n.
std::vector<WeightLevel<double>> enumerate_increasing(const Coefficients& c, std::uint64_t limit_n);
std::vector<WeightLevel<Rational>> enumerate_increasing_exact(const Coefficients& c, std::uint64_t limit_n);

struct WeightValue {
  double value = 0.0;
  std::optional<Rational> exact;

  WeightMode mode() const { return exact ? WeightMode::exact : WeightMode::float64; }
};

enum class OrderStatisticPath { automatic, heap, bisection };

struct OrderStatisticOptions {
  OrderStatisticPath path = OrderStatisticPath::automatic;
  WeightMode mode = WeightMode::float64;
  unsigned threads = 1;
  std::size_t heap_cap = 100'000'000;
  /// automatic uses the heap up to this n and bisection beyond it.
  std::uint64_t heap_preferred_limit = std::uint64_t{1} << 22;
};

/// The n-th smallest lattice weight with multiplicity (n >= 1): the value w
/// with #{w(k) < w} < n <= #{w(k) <= w}.
///
/// The bisection path searches the ordered bit patterns of non-negative
/// doubles for the smallest x with count(<= x) >= n. The count only steps at
/// achieved weights, so that x is the achieved weight itself and matches the
/// heap path exactly. Bisection is float mode only.
WeightValue kth_smallest_weight(const Coefficients& c, std::uint64_t n, const OrderStatisticOptions& opts = {});

/// Batched form; results follow the order of `ns`. One heap pass serves the whole grid.
std::vector<WeightValue> kth_smallest_weights(const Coefficients& c, std::span<const std::uint64_t> ns,
                                              const OrderStatisticOptions& opts = {});

extern template class WeightModel<double>;
extern template class WeightModel<Rational>;
extern template class IncreasingWeights<double>;
extern template class IncreasingWeights<Rational>;
extern template std::uint64_t count_points<double>(const WeightModel<double>&, const double&, const CountOptions&);
extern template std::uint64_t count_points<Rational>(const WeightModel<Rational>&, const Rational&,
                                                     const CountOptions&);

}  // namespace aniso
