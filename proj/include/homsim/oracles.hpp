#pragma once

#include <utility>

namespace homsim {

// Closed-form normalized coincidence curves for the Gaussian families, kept
// deliberately independent of the quadrature engine so the two can be played
// against each other.

// Balanced splitter, equal Gaussian marginals of width sigma:
//   1 - exp(-d^2 sigma^2 / 2).
double symmetric_gaussian_rc(double sigma, double d);

// Gaussian marginals with centers Omega and Omega (1 - y):
//   1 - exp(-sigma^2 d^2 / 2 - Omega^2 y^2 / (2 sigma^2)).
// The dip floor rises with |y| and the curve flattens once
// Omega^2 y^2 / sigma^2 is large.
double asymmetric_gaussian_rc(double omega, double y_asym, double sigma, double d);

// Time-shifted family: the numeric engine's normalized rate at d should equal
// the unshifted closed form translated by the shift. Returns the pair
// (engine value at d, symmetric_gaussian_rc at d + time_shift); the + sign is
// the translation the implementation realizes, asserted in tests.
std::pair<double, double> time_shift_identity_check(double sigma, double time_shift, double d);

}  // namespace homsim
