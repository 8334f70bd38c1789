#pragma once

#include <iosfwd>

namespace sbal {

// Condensed invariant suite (algebra laws, chart cocycles, unitarity,
// quadrature calibration, point balancing).  Prints one line per check to
// `out`; returns the number of failed checks.
int run_selftest(std::ostream& out);

}  // namespace sbal
