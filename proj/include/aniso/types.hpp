#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace aniso {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vector = VectorX<double>;

// Bad caller input: malformed sequence, out-of-domain parameter, dimension mismatch.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured enumeration limit (coordinate range, heap size) would be exceeded.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form value does not fit in a double. The log-space accessor still works.
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what) : std::range_error(what) {}
};

// An identity that must hold exactly (complexity bridge, sandwich bound) failed.
class IdentityViolation : public std::runtime_error {
 public:
  explicit IdentityViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aniso
