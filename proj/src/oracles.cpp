#include "homsim/oracles.hpp"

#include <cmath>

#include "homsim/biphoton.hpp"
#include "homsim/errors.hpp"

namespace homsim {

double symmetric_gaussian_rc(double sigma, double d) {
    if (!(sigma > 0.0)) throw PreconditionError("symmetric_gaussian_rc requires sigma > 0");
    return 1.0 - std::exp(-0.5 * d * d * sigma * sigma);
}

double asymmetric_gaussian_rc(double omega, double y_asym, double sigma, double d) {
    if (!(sigma > 0.0)) throw PreconditionError("asymmetric_gaussian_rc requires sigma > 0");
    const double detuning = omega * y_asym;
    return 1.0 - std::exp(-0.5 * d * d * sigma * sigma -
                          0.5 * detuning * detuning / (sigma * sigma));
}

std::pair<double, double> time_shift_identity_check(double sigma, double time_shift, double d) {
    if (!(sigma > 0.0)) throw PreconditionError("time_shift_identity_check requires sigma > 0");
    // Carrier at the canonical 10:1 ratio; normalized rates are carrier-free.
    BiphotonSystem sys{JointSpectrum::time_shifted(10.0 * sigma, sigma, time_shift),
                       SpectralDensity::unit(), BeamSplitter::balanced(), Geometry{}, 1e-8};
    const QuadratureGrid grid = auto_grid(sys.spectrum, std::abs(d), sys.tolerance);
    const double n = spectral_norm_on(sys, grid);
    const double k = overlap_kernel_on(sys, grid, d);
    const double engine = (2.0 * n - 2.0 * k) / (2.0 * n);
    return {engine, symmetric_gaussian_rc(sigma, d + time_shift)};
}

}  // namespace homsim
