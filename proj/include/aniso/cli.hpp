#pragma once

#include "aniso/lattice.hpp"

#include <iosfwd>
#include <string>

namespace aniso::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kCapacityError = 2,
  kIdentityViolation = 3,
};

/// Runs one subcommand: volume, count, widths, eigs, equiv, sandwich,
/// complexity, bridge, classify, probe. Tables go to `out` (or --out),
/// diagnostics and usage to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Floating CSV cells: 17 significant digits, enough to round-trip a double.
std::string format_double(double x);

/// Exact rational from "7/2", "-3", "4.5" or "1.25e-3".
Rational parse_rational(const std::string& text);

}  // namespace aniso::cli
