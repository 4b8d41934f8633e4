#include "aniso/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aniso {

namespace {

void require_finite_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InputError(std::string("invalid family: ") + what + " must be finite and positive");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string("invalid family: ") + what + " must be finite");
}

}  // namespace

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::explicit_list: return "list";
    case FamilyKind::constant: return "constant";
    case FamilyKind::power: return "power";
    case FamilyKind::logarithmic: return "logarithmic";
    case FamilyKind::exponential: return "exponential";
    case FamilyKind::double_scale: return "double_scale";
  }
  return "unknown";
}

Family::Family(FamilyKind kind, double c, double alpha, double rho, std::vector<double> values)
    : kind_(kind), c_(c), alpha_(alpha), rho_(rho), values_(std::move(values)) {}

Family Family::list(std::vector<double> values) {
  if (values.empty()) throw InputError("invalid family: explicit list is empty");
  for (double v : values) require_finite_positive(v, "list entry");
  return Family(FamilyKind::explicit_list, 1.0, 0.0, 1.0, std::move(values));
}

Family Family::constant(double c) {
  require_finite_positive(c, "c");
  return Family(FamilyKind::constant, c, 0.0, 1.0, {});
}

Family Family::power(double c, double alpha) {
  require_finite_positive(c, "c");
  require_finite(alpha, "alpha");
  return Family(FamilyKind::power, c, alpha, 1.0, {});
}

Family Family::logarithmic(double c, double alpha) {
  require_finite_positive(c, "c");
  require_finite(alpha, "alpha");
  return Family(FamilyKind::logarithmic, c, alpha, 1.0, {});
}

Family Family::exponential(double c, double rho) {
  require_finite_positive(c, "c");
  require_finite_positive(rho, "rho");
  return Family(FamilyKind::exponential, c, 0.0, rho, {});
}

Family Family::double_scale(double c) {
  require_finite_positive(c, "c");
  return Family(FamilyKind::double_scale, c, 0.0, 1.0, {});
}

std::optional<std::size_t> Family::length() const {
  if (kind_ == FamilyKind::explicit_list) return values_.size();
  return std::nullopt;
}

double Family::operator()(std::size_t j, const Family* companion) const {
  if (j < 1) throw InputError("sequence index must be >= 1");
  const double x = static_cast<double>(j);
  double v = 0.0;
  switch (kind_) {
    case FamilyKind::explicit_list:
      if (j > values_.size()) {
        throw InputError("explicit list has " + std::to_string(values_.size()) + " entries; index " +
                         std::to_string(j) + " requested");
      }
      v = values_[j - 1];
      break;
    case FamilyKind::constant: v = c_; break;
    case FamilyKind::power: v = c_ * std::pow(x, alpha_); break;
    case FamilyKind::logarithmic: v = c_ * std::pow(std::log(x + 1.0), alpha_); break;
    case FamilyKind::exponential: v = c_ * std::pow(rho_, x); break;
    case FamilyKind::double_scale: {
      if (companion == nullptr || companion->kind() == FamilyKind::double_scale) {
        throw InputError("invalid family: double_scale needs a non-double_scale smoothness sequence");
      }
      v = c_ * std::pow(2.0 * std::numbers::pi, 2.0 * (*companion)(j));
      break;
    }
  }
  if (!std::isfinite(v) || v <= 0.0) {
    throw InputError("invalid family: " + to_string(kind_) + " is not finite and positive at j = " +
                     std::to_string(j));
  }
  return v;
}

bool Family::non_decreasing(const Family* companion) const {
  switch (kind_) {
    case FamilyKind::explicit_list: return std::is_sorted(values_.begin(), values_.end());
    case FamilyKind::constant: return true;
    case FamilyKind::power: return alpha_ >= 0.0;
    case FamilyKind::logarithmic: return alpha_ >= 0.0;
    case FamilyKind::exponential: return rho_ >= 1.0;
    case FamilyKind::double_scale:
      return companion != nullptr && companion->kind() != FamilyKind::double_scale &&
             companion->non_decreasing();
  }
  return false;
}

bool Family::bounded_away_from_zero() const {
  switch (kind_) {
    case FamilyKind::explicit_list: return true;
    case FamilyKind::constant: return true;
    case FamilyKind::power: return alpha_ >= 0.0;
    case FamilyKind::logarithmic: return alpha_ >= 0.0;
    case FamilyKind::exponential: return rho_ >= 1.0;
    case FamilyKind::double_scale: return true;  // (2 pi)^(2 b_j) >= 1
  }
  return false;
}

Coefficients make_coefficients(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw InputError("a and b must have the same length");
  if (a.size() < 1) throw InputError("dimension must be >= 1");
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (!std::isfinite(a[j]) || a[j] <= 0.0) throw InputError("a_j must be finite and positive");
    if (!std::isfinite(b[j]) || b[j] <= 0.0) throw InputError("b_j must be finite and positive");
  }
  return Coefficients{a, b};
}

SequencePair::SequencePair(Family a, Family b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 1) throw InputError("dimension d must be >= 1");
  if (b_.kind() == FamilyKind::double_scale) {
    throw InputError("invalid family: the smoothness sequence cannot be double_scale");
  }
  Vector av(d_), bv(d_);
  for (int j = 1; j <= d_; ++j) {
    av[j - 1] = this->a(static_cast<std::size_t>(j));
    bv[j - 1] = this->b(static_cast<std::size_t>(j));
  }
  coeffs_ = Coefficients{std::move(av), std::move(bv)};
}

SequencePair SequencePair::from_lists(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw InputError("a and b lists must have the same length");
  const int d = static_cast<int>(a.size());
  return SequencePair(Family::list(std::move(a)), Family::list(std::move(b)), d);
}

double harmonic_smoothness(const Coefficients& c) { return 1.0 / c.b.cwiseInverse().sum(); }

double exponent_bound(const Coefficients& c) { return std::max(1.0, 2.0 * c.b.maxCoeff()); }

double shift_constant(const Coefficients& c) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < c.dim(); ++j) sum += c.a[j] * std::pow(2.0, -2.0 * c.b[j]);
  return std::pow(sum, 1.0 / exponent_bound(c));
}

// JSON --------------------------------------------------------------------

namespace {

double number_field(const nlohmann::json& j, const char* key, std::optional<double> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw InputError(std::string("family spec is missing \"") + key + "\"");
  }
  if (!j.at(key).is_number()) throw InputError(std::string("family field \"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

}  // namespace

Family family_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    std::vector<double> values;
    for (const auto& v : j) {
      if (!v.is_number()) throw InputError("explicit list entries must be numbers");
      values.push_back(v.get<double>());
    }
    return Family::list(std::move(values));
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw InputError("family spec must be an array or an object with a \"kind\" string");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "list") return family_from_json(j.at("values"));
  if (kind == "constant") return Family::constant(number_field(j, "c"));
  if (kind == "power") return Family::power(number_field(j, "c", 1.0), number_field(j, "alpha"));
  if (kind == "logarithmic") return Family::logarithmic(number_field(j, "c", 1.0), number_field(j, "alpha", 1.0));
  if (kind == "exponential") return Family::exponential(number_field(j, "c", 1.0), number_field(j, "rho"));
  if (kind == "double_scale") return Family::double_scale(number_field(j, "c", 1.0));
  throw InputError("unknown family kind \"" + kind + "\"");
}

nlohmann::json to_json(const Family& f) {
  switch (f.kind()) {
    case FamilyKind::explicit_list: return nlohmann::json(std::vector<double>(f.values().begin(), f.values().end()));
    case FamilyKind::constant: return {{"kind", "constant"}, {"c", f.c()}};
    case FamilyKind::power: return {{"kind", "power"}, {"c", f.c()}, {"alpha", f.alpha()}};
    case FamilyKind::logarithmic: return {{"kind", "logarithmic"}, {"c", f.c()}, {"alpha", f.alpha()}};
    case FamilyKind::exponential: return {{"kind", "exponential"}, {"c", f.c()}, {"rho", f.rho()}};
    case FamilyKind::double_scale: return {{"kind", "double_scale"}, {"c", f.c()}};
  }
  return nullptr;
}

SequencePair sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) {
    throw InputError("sequence spec must be an object with \"a\" and \"b\"");
  }
  Family a = family_from_json(j.at("a"));
  Family b = family_from_json(j.at("b"));
  int d = 0;
  if (j.contains("d")) {
    if (!j.at("d").is_number_integer()) throw InputError("\"d\" must be an integer");
    d = j.at("d").get<int>();
  } else {
    const auto la = a.length();
    const auto lb = b.length();
    if (!la && !lb) throw InputError("\"d\" is required when neither a nor b is an explicit list");
    d = static_cast<int>(std::min(la.value_or(lb.value_or(0)), lb.value_or(la.value_or(0))));
  }
  return SequencePair(std::move(a), std::move(b), d);
}

nlohmann::json to_json(const SequencePair& s) {
  return {{"a", to_json(s.a_family())}, {"b", to_json(s.b_family())}, {"d", s.dim()}};
}

}  // namespace aniso
