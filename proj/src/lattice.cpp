#include "aniso/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace aniso {

namespace {

constexpr std::int64_t kReachCeiling = std::int64_t{1} << 62;

bool is_integral(double x) { return std::isfinite(x) && x == std::floor(x); }

Rational integer_power(std::int64_t k, unsigned long e) {
  mpz_class base(static_cast<long>(k));
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return Rational(r);
}

}  // namespace

bool exact_eligible(const Coefficients& c) {
  for (Eigen::Index j = 0; j < c.dim(); ++j) {
    const double e = 2.0 * c.b[j];
    if (!is_integral(e) || e < 1.0) return false;
  }
  return true;
}

std::vector<int> canonical_order(const Coefficients& c) {
  std::vector<int> order(static_cast<std::size_t>(c.dim()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (c.b[x] != c.b[y]) return c.b[x] > c.b[y];
    return c.a[x] > c.a[y];
  });
  return order;
}

// WeightModel ----------------------------------------------------------------

template <typename Scalar>
WeightModel<Scalar>::WeightModel(const Coefficients& c) : order_(canonical_order(c)) {
  if (c.dim() < 1) throw InputError("dimension must be >= 1");
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (!exact_eligible(c)) throw InputError("exact mode needs every 2 b_j to be a positive integer");
  }
  for (int j : order_) {
    scale_.push_back(c.a[j]);
    exponent_.push_back(2.0 * c.b[j]);
    if constexpr (std::is_same_v<Scalar, Rational>) {
      exact_scale_.emplace_back(c.a[j]);
      exact_exponent_.push_back(static_cast<unsigned long>(2.0 * c.b[j]));
    }
  }
}

template <typename Scalar>
Scalar WeightModel<Scalar>::term(int pos, std::int64_t k) const {
  const auto p = static_cast<std::size_t>(pos);
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (k == 0) return Rational(0);
    return exact_scale_[p] * integer_power(k, exact_exponent_[p]);
  } else {
    return scale_[p] * std::pow(static_cast<double>(k), exponent_[p]);
  }
}

template <typename Scalar>
std::int64_t WeightModel<Scalar>::estimate_reach(int pos, double budget) const {
  if (!(budget > 0.0)) return 0;
  const auto p = static_cast<std::size_t>(pos);
  const double r = std::pow(budget / scale_[p], 1.0 / exponent_[p]);
  if (!(r < static_cast<double>(kReachCeiling))) return kReachCeiling;
  return static_cast<std::int64_t>(std::floor(r));
}

template <typename Scalar>
Scalar WeightModel<Scalar>::weight(std::span<const std::int64_t> k) const {
  if (k.size() != order_.size()) throw InputError("point dimension does not match the weight");
  Scalar s = Scalar(0);
  for (int pos = 0; pos < dim(); ++pos) {
    const std::int64_t kj = k[static_cast<std::size_t>(order_[static_cast<std::size_t>(pos)])];
    s = s + term(pos, kj < 0 ? -kj : kj);
  }
  return s;
}

template <typename Scalar>
Scalar WeightModel<Scalar>::weight_by_position(std::span<const std::int32_t> k) const {
  Scalar s = Scalar(0);
  for (int pos = 0; pos < dim(); ++pos) s = s + term(pos, k[static_cast<std::size_t>(pos)]);
  return s;
}

template <typename Scalar>
double WeightModel<Scalar>::to_double(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return s.get_d();
  } else {
    return s;
  }
}

double weight(const Coefficients& c, std::span<const std::int64_t> k) {
  return WeightModel<double>(c).weight(k);
}

// Counting -------------------------------------------------------------------

namespace {

template <typename Scalar>
class PointCounter {
 public:
  PointCounter(const WeightModel<Scalar>& model, const Scalar& limit, bool strict)
      : model_(model), limit_(limit), strict_(strict), last_(model.dim() - 1) {}

  bool admits(const Scalar& s) const { return strict_ ? s < limit_ : s <= limit_; }

  // Points extending a prefix whose partial weight `partial` is admitted.
  std::uint64_t from(int pos, const Scalar& partial) const {
    if (pos == last_) return tail(partial);
    std::uint64_t total = 0;
    for (std::int64_t k = 0;; ++k) {
      const Scalar s = partial + model_.term(pos, k);
      if (!admits(s)) break;
      total += (k == 0 ? 1u : 2u) * from(pos + 1, s);
    }
    return total;
  }

  // Admitted values of the top coordinate, with their partial weights.
  std::vector<std::pair<std::int64_t, Scalar>> top_level() const {
    std::vector<std::pair<std::int64_t, Scalar>> out;
    for (std::int64_t k = 0;; ++k) {
      Scalar s = Scalar(0) + model_.term(0, k);
      if (!admits(s)) break;
      out.emplace_back(k, std::move(s));
    }
    return out;
  }

 private:
  // The last coordinate is monotone in k; start from the closed-form reach
  // and walk to the exact boundary of the admitted predicate.
  std::uint64_t tail(const Scalar& partial) const {
    const double budget = WeightModel<Scalar>::to_double(limit_ - partial);
    std::int64_t k = model_.estimate_reach(last_, budget);
    while (k > 0 && !admits(partial + model_.term(last_, k))) --k;
    while (admits(partial + model_.term(last_, k + 1))) ++k;
    return 1 + 2 * static_cast<std::uint64_t>(k);
  }

  const WeightModel<Scalar>& model_;
  Scalar limit_;
  bool strict_;
  int last_;
};

template <typename Scalar>
void check_capacity(const WeightModel<Scalar>& model, const Scalar& limit, std::uint64_t cap) {
  const double budget = WeightModel<Scalar>::to_double(limit);
  if (std::isnan(budget)) throw InputError("threshold is not a number");
  for (int pos = 0; pos < model.dim(); ++pos) {
    const std::int64_t reach = model.estimate_reach(pos, budget);
    if (static_cast<std::uint64_t>(reach) > cap) {
      throw CapacityError("coordinate range " + std::to_string(reach) + " exceeds the cap " + std::to_string(cap));
    }
  }
}

}  // namespace

template <typename Scalar>
std::uint64_t count_points(const WeightModel<Scalar>& model, const Scalar& threshold, const CountOptions& opts) {
  const bool strict = opts.comparison == Comparison::strict;
  Scalar limit = threshold;
  if constexpr (std::is_same_v<Scalar, double>) {
    if (std::isnan(threshold)) throw InputError("threshold is not a number");
    if (opts.tolerance < 0.0) throw InputError("tolerance must be non-negative");
    if (opts.tolerance > 0.0) limit = strict ? threshold - opts.tolerance : threshold + opts.tolerance;
  }
  if (threshold < 0) throw InputError("threshold must be non-negative");
  check_capacity(model, limit, opts.coordinate_cap);

  const PointCounter<Scalar> counter(model, limit, strict);
  if (!counter.admits(Scalar(0))) return 0;
  if (model.dim() == 1) return counter.from(0, Scalar(0));

  const auto top = counter.top_level();
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(top.size())));
  auto work = [&](unsigned w) {
    std::uint64_t sum = 0;
    for (std::size_t i = w; i < top.size(); i += workers) {
      sum += (top[i].first == 0 ? 1u : 2u) * counter.from(1, top[i].second);
    }
    return sum;
  };
  if (workers == 1) return work(0);

  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&, w] { partial[w] = work(w); });
  for (auto& t : pool) t.join();
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::uint64_t count(const Coefficients& c, double threshold, const CountOptions& opts) {
  return count_points(WeightModel<double>(c), threshold, opts);
}

std::uint64_t count_exact(const Coefficients& c, const Rational& threshold, const CountOptions& opts) {
  return count_points(WeightModel<Rational>(c), threshold, opts);
}

std::uint64_t count(const Coefficients& c, double threshold, WeightMode mode, const CountOptions& opts) {
  if (mode == WeightMode::float64) return count(c, threshold, opts);
  if (!std::isfinite(threshold)) throw InputError("exact mode needs a finite threshold");
  return count_exact(c, Rational(threshold), opts);
}

std::uint64_t count_within_power_radius(const Coefficients& c, std::uint64_t m, WeightMode mode,
                                        const CountOptions& opts) {
  if (m < 1) throw InputError("m must be >= 1");
  CountOptions o = opts;
  o.comparison = Comparison::non_strict;
  const double p = exponent_bound(c);
  if (mode == WeightMode::exact) {
    // exact eligibility makes p_d an integer
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(p));
    return count_exact(c, Rational(t), o);
  }
  return count(c, std::pow(static_cast<double>(m), p), o);
}

// Heap enumeration -----------------------------------------------------------

template <typename Scalar>
IncreasingWeights<Scalar>::IncreasingWeights(const Coefficients& c, std::size_t heap_cap)
    : model_(c), heap_cap_(heap_cap) {
  const auto d = static_cast<std::size_t>(model_.dim());
  heap_.push_back(Node{Scalar(0), std::vector<std::int32_t>(d, 0), 0});
}

template <typename Scalar>
void IncreasingWeights<Scalar>::expand(Node node, std::uint64_t& multiplicity) {
  int nonzero = 0;
  for (auto v : node.k) nonzero += v != 0;
  multiplicity += std::uint64_t{1} << nonzero;

  for (int pos = node.last; pos < model_.dim(); ++pos) {
    Node child{Scalar(0), node.k, pos};
    auto& slot = child.k[static_cast<std::size_t>(pos)];
    if (slot == std::numeric_limits<std::int32_t>::max()) throw CapacityError("coordinate overflow in enumeration");
    ++slot;
    child.weight = model_.weight_by_position(child.k);
    heap_.push_back(std::move(child));
    std::push_heap(heap_.begin(), heap_.end(), Later{});
  }
  if (heap_.size() > heap_cap_) {
    throw CapacityError("enumeration frontier exceeds " + std::to_string(heap_cap_) + " entries");
  }
}

template <typename Scalar>
WeightLevel<Scalar> IncreasingWeights<Scalar>::next() {
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Node top = std::move(heap_.back());
  heap_.pop_back();
  Scalar w = top.weight;
  std::uint64_t multiplicity = 0;
  expand(std::move(top), multiplicity);
  // Children never weigh less than their parent, so every point of weight w
  // surfaces before anything heavier.
  while (!heap_.empty() && heap_.front().weight == w) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Node n = std::move(heap_.back());
    heap_.pop_back();
    expand(std::move(n), multiplicity);
  }
  cumulative_ += multiplicity;
  return WeightLevel<Scalar>{std::move(w), multiplicity, cumulative_};
}

namespace {

template <typename Scalar>
std::vector<WeightLevel<Scalar>> levels_until(const Coefficients& c, std::uint64_t limit_n) {
  if (limit_n < 1) throw InputError("limit_n must be >= 1");
  IncreasingWeights<Scalar> stream(c);
  std::vector<WeightLevel<Scalar>> out;
  do {
    out.push_back(stream.next());
  } while (out.back().cumulative < limit_n);
  return out;
}

}  // namespace

std::vector<WeightLevel<double>> enumerate_increasing(const Coefficients& c, std::uint64_t limit_n) {
  return levels_until<double>(c, limit_n);
}

std::vector<WeightLevel<Rational>> enumerate_increasing_exact(const Coefficients& c, std::uint64_t limit_n) {
  return levels_until<Rational>(c, limit_n);
}

// Order statistics -----------------------------------------------------------

namespace {

double smallest_weight_reaching(const Coefficients& c, std::uint64_t n, unsigned threads) {
  const WeightModel<double> model(c);
  CountOptions opts;
  opts.threads = threads;
  auto reaches = [&](double x) { return count_points(model, x, opts) >= n; };

  if (reaches(0.0)) return 0.0;
  double hi = 1.0;
  while (!reaches(hi)) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw CapacityError("order statistic beyond the double range");
  }
  // Non-negative doubles are ordered like their bit patterns.
  std::uint64_t lo_bits = std::bit_cast<std::uint64_t>(0.0);
  std::uint64_t hi_bits = std::bit_cast<std::uint64_t>(hi);
  while (hi_bits - lo_bits > 1) {
    const std::uint64_t mid = lo_bits + (hi_bits - lo_bits) / 2;
    if (reaches(std::bit_cast<double>(mid))) {
      hi_bits = mid;
    } else {
      lo_bits = mid;
    }
  }
  return std::bit_cast<double>(hi_bits);
}

bool use_heap(const OrderStatisticOptions& opts, std::uint64_t n_max) {
  if (opts.mode == WeightMode::exact) {
    if (opts.path == OrderStatisticPath::bisection) throw InputError("bisection order statistics are float mode only");
    return true;
  }
  switch (opts.path) {
    case OrderStatisticPath::heap: return true;
    case OrderStatisticPath::bisection: return false;
    case OrderStatisticPath::automatic: return n_max <= opts.heap_preferred_limit;
  }
  return true;
}

template <typename Scalar>
std::vector<WeightValue> heap_statistics(const Coefficients& c, std::span<const std::uint64_t> ns,
                                         std::size_t heap_cap) {
  std::vector<std::size_t> idx(ns.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return ns[x] < ns[y]; });

  std::vector<WeightValue> out(ns.size());
  IncreasingWeights<Scalar> stream(c, heap_cap);
  WeightLevel<Scalar> level = stream.next();
  for (std::size_t i : idx) {
    while (level.cumulative < ns[i]) level = stream.next();
    WeightValue v;
    v.value = WeightModel<Scalar>::to_double(level.weight);
    if constexpr (std::is_same_v<Scalar, Rational>) v.exact = level.weight;
    out[i] = std::move(v);
  }
  return out;
}

}  // namespace

std::vector<WeightValue> kth_smallest_weights(const Coefficients& c, std::span<const std::uint64_t> ns,
                                              const OrderStatisticOptions& opts) {
  if (ns.empty()) return {};
  for (auto n : ns) {
    if (n < 1) throw InputError("order statistic index must be >= 1");
  }
  const std::uint64_t n_max = *std::max_element(ns.begin(), ns.end());
  if (use_heap(opts, n_max)) {
    try {
      if (opts.mode == WeightMode::exact) return heap_statistics<Rational>(c, ns, opts.heap_cap);
      return heap_statistics<double>(c, ns, opts.heap_cap);
    } catch (const CapacityError&) {
      if (opts.path != OrderStatisticPath::automatic || opts.mode == WeightMode::exact) throw;
    }
  }
  std::vector<WeightValue> out;
  out.reserve(ns.size());
  for (auto n : ns) out.push_back(WeightValue{smallest_weight_reaching(c, n, opts.threads), std::nullopt});
  return out;
}

WeightValue kth_smallest_weight(const Coefficients& c, std::uint64_t n, const OrderStatisticOptions& opts) {
  const std::uint64_t ns[] = {n};
  return kth_smallest_weights(c, ns, opts).front();
}

template class WeightModel<double>;
template class WeightModel<Rational>;
template class IncreasingWeights<double>;
template class IncreasingWeights<Rational>;
template std::uint64_t count_points<double>(const WeightModel<double>&, const double&, const CountOptions&);
template std::uint64_t count_points<Rational>(const WeightModel<Rational>&, const Rational&, const CountOptions&);

}  // namespace aniso
