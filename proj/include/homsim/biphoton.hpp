#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "homsim/interferometer.hpp"
#include "homsim/quadrature.hpp"
#include "homsim/spectra.hpp"

namespace homsim {

// Full description of one interference run: source spectrum, detector
// spectral density, splitter, and the detector-side arm template. The scan
// variable d = l1 - s1 is supplied per call; s2/l2 only translate detection
// times and cancel from every rate.
struct BiphotonSystem {
    JointSpectrum spectrum;
    SpectralDensity density;
    BeamSplitter splitter = BeamSplitter::balanced();
    Geometry arms;            // s2/l2 template; s1/l1 are set from d when needed
    double tolerance = 1e-8;  // quadrature tolerance for derived grids
};

// Rates more negative than -kNegativeRateSlack * (2N) indicate a broken
// quadrature setup and raise NumericalConsistencyError; anything in
// [-slack, 0) is clamped to zero.
inline constexpr double kNegativeRateSlack = 1e-10;

// N = iint |F|^2 and the exchange kernel
// K(d) = iint F(w,wt) conj(F(wt,w)) exp(-i (w - wt) d), which is real for
// every spectrum. The _on variants reuse a caller-built grid so that families
// of evaluations share identical quadrature error.
double spectral_norm(const BiphotonSystem& sys);
double spectral_norm_on(const BiphotonSystem& sys, const QuadratureGrid& grid);
double overlap_kernel(const BiphotonSystem& sys, double d);
double overlap_kernel_on(const BiphotonSystem& sys, const QuadratureGrid& grid, double d);

// Precomputed frequency rule with F cached on its nodes; evaluates the
// detected two-photon amplitude at retarded-time coordinates in O(n^2)
// multiply-adds. Safe for concurrent eval() calls.
class WavepacketPlan {
public:
    WavepacketPlan(const BiphotonSystem& sys, double tau_scale, double d_max);

    std::complex<double> eval(double tau1p, double tau2p, double d) const;

    // iint |psi|^2 dtau1p dtau2p over the square rule `outer`. Both inner
    // spectral sums couple to a single outer coordinate, so they are hoisted
    // and cached per outer node: O(m n^2 + m^2 n) instead of the O(m^2 n^2)
    // of evaluating point by point.
    double integrated_power(const AxisRule& outer, double d) const;

    const QuadratureGrid& grid() const { return grid_; }

private:
    QuadratureGrid grid_;
    std::vector<std::complex<double>> fw_;  // w_j w_k F(w_j, wt_k), row-major
    double r_ = 0.5, t_ = 0.5;
};

// Joint detection amplitude at the two output ports, as a function of the
// primed retarded times and the path difference d. Reduces to the familiar
// two-term interference form for the balanced splitter.
std::complex<double> wavepacket(const BiphotonSystem& sys, double tau1p, double tau2p, double d);

// Balanced-splitter decomposition psi = psi1 + psi2: psi1 carries the
// path-difference interference and vanishes identically at d = 0; psi2 is the
// d-independent exchange-asymmetric remainder. Any other splitter is an
// UnsupportedDecompositionError.
std::pair<std::complex<double>, std::complex<double>>
psi_split(const BiphotonSystem& sys, double tau1p, double tau2p, double d);

// Coincidence rate by the closed spectral form
//   R(d) = 4 (R^2 + T^2) N - 8 R T Re K(d),
// i.e. 2N - 2 Re K(d) for the balanced splitter.
double rate_spectral(const BiphotonSystem& sys, double d);

// Same quantity integrated as |wavepacket|^2 over the retarded-time plane
// (nested quadrature, Parseval factor divided out). Exists as an independent
// verification route; substantially more expensive than rate_spectral.
double rate_timedomain(const BiphotonSystem& sys, double d);

// Two-line interference of the symmetric basis pair (Omega, Omega_tilde):
// proportional shape 1 - cos((Omega - Omega_tilde) d), exact zeros at
// d_k = 2 pi k / (Omega - Omega_tilde).
double component_rate(double omega, double omega_tilde, double d);

// iint |F - F^T|^2: zero iff exchange symmetric; equals the balanced
// splitter's rate_spectral at d = 0.
double asymmetry_norm(const BiphotonSystem& sys);

struct CoincidencePoint {
    double d = 0.0;
    double rate = 0.0;             // raw spectral-route value
    double rate_normalized = 0.0;  // rate / (2N)
};

// Sampled coincidence curve. Invariants, enforced at construction and on CSV
// parse: strictly increasing d, nonnegative rates, positive normalization.
class CoincidenceCurve {
public:
    CoincidenceCurve() = default;
    CoincidenceCurve(std::vector<CoincidencePoint> points, double normalization,
                     std::string description);

    const std::vector<CoincidencePoint>& points() const { return points_; }
    double normalization() const { return normalization_; }  // the asymptote 2N
    const std::string& description() const { return description_; }
    bool empty() const { return points_.empty(); }

    // Header "D,rate,rate_normalized", one row per point with 17 significant
    // digits, then "# normalization=..." and "# spec=..." trailers.
    void to_csv(std::ostream& out) const;
    std::string to_csv_string() const;
    static CoincidenceCurve from_csv(std::istream& in);
    static CoincidenceCurve from_csv_string(const std::string& text);

private:
    std::vector<CoincidencePoint> points_;
    double normalization_ = 1.0;
    std::string description_;
};

// Evaluates rate_spectral over d_values (strictly ascending; PreconditionError
// otherwise) on one shared grid sized for the largest |d|.
CoincidenceCurve sweep(const BiphotonSystem& sys, const std::vector<double>& d_values);

std::string format_float(double v);  // 17 significant digits, C locale

}  // namespace homsim
