#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "homsim/spectra.hpp"

namespace homsim {

// Linear analyzer angles in front of the two detectors, taken modulo pi.
struct AnalyzerPair {
    AnalyzerPair(double theta1, double theta2);
    double theta1 = 0.0;
    double theta2 = 0.0;
};

// Relative sign between the two polarization components of the entangled
// pair: Singlet is the antisymmetric (minus) combination of HV and VH,
// Triplet the symmetric one.
enum class PairingSign { Singlet = -1, Triplet = +1 };

// Polarization-entangled source behind a balanced splitter; the detector
// spectral density is flat here.
struct PolarizedBiphoton {
    JointSpectrum spectrum;
    PairingSign sign = PairingSign::Singlet;
    double tolerance = 1e-8;
};

// Analyzer factor (1/8) sin^2(theta1 - theta2): zero for parallel analyzers,
// maximal 1/8 for crossed ones, invariant under rotating both by the same
// angle.
double xi(const AnalyzerPair& pair);

// Spectral factor of the polarized coincidence rate,
//   eta(d) = 2N - 2 sign Re K(d),
// normalized like the scalar engine (N and K from F). The singlet peaks at
// d = 0 for any spectrum; the triplet reproduces the scalar dip.
double eta(const PolarizedBiphoton& pb, double d);

// Full polarized rate xi * eta. The factorization is exact; a four-component
// amplitude evaluation cross-checks it in the test suite.
double coincidence_rate_polarized(const PolarizedBiphoton& pb, const AnalyzerPair& pair,
                                  double d);

// Second central difference of eta at d = 0 with step h = 1e-3. Requires an
// exchange-symmetric spectrum (PreconditionError otherwise). Negative for the
// singlet; magnitude equals 2 iint |F|^2 (w - wt)^2 up to O(h^2).
double eta_curvature_at_zero(const PolarizedBiphoton& pb);

struct PolarPoint {
    double theta1 = 0.0, theta2 = 0.0, xi = 0.0;
    double d = 0.0, eta = 0.0, rate = 0.0;
};

// CSV with header "theta1,theta2,xi,D,eta,rate" and the same float format and
// trailing comment lines as the scalar curve.
void write_polar_csv(std::ostream& out, const std::vector<PolarPoint>& rows,
                     double normalization, const std::string& description);
std::vector<PolarPoint> parse_polar_csv(std::istream& in);

}  // namespace homsim
