#pragma once

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace homsim {

using Complex = std::complex<double>;

// Frequencies are dimensionless: the reference bandwidth sets the unit, so a
// family with sigma = 1 and omega = 10 reproduces the canonical 10:1
// carrier-to-bandwidth ratio used throughout the tests.

enum class SpectrumKind {
    SymmetricGaussianProduct,
    AsymmetricGaussianProduct,
    TimeShiftedProduct,
    RegularizedSpdc,
    SymmetricBasisPair,
    Tabulated,
};

// Uniform complex grid over [omega_lo,omega_hi] x [omega2_lo,omega2_hi],
// row-major with the first axis outermost. Queries interpolate bilinearly;
// off-grid queries are a DomainError naming the offending axis.
struct TabulatedGrid {
    double omega_lo = 0.0, omega_hi = 0.0;
    int n_omega = 0;
    double omega2_lo = 0.0, omega2_hi = 0.0;
    int n_omega2 = 0;
    std::vector<Complex> values;  // n_omega * n_omega2 entries

    Complex interpolate(double w, double wt) const;
    bool square() const;
    void validate() const;  // throws DomainError on malformed shape
};

TabulatedGrid load_tabulated_grid(std::istream& in);
TabulatedGrid load_tabulated_grid_file(const std::string& path);
void save_tabulated_grid(const TabulatedGrid& grid, std::ostream& out);

// Joint two-photon spectral amplitude f(omega, omega_tilde). Value type:
// copying is cheap for parametric families and shares the value grid for
// tabulated ones. All evaluation is const and safe to call concurrently.
class JointSpectrum {
public:
    static JointSpectrum symmetric_gaussian(double omega, double sigma);
    static JointSpectrum asymmetric_gaussian(double omega, double omega_tilde, double sigma);
    // f1(omega) f1(omega_tilde) exp(-i omega time_shift): one photon delayed.
    static JointSpectrum time_shifted(double omega, double sigma, double time_shift);
    // Down-conversion line delta(omega + omega_tilde - omega0) regularized as a
    // normalized Gaussian of width epsilon in the sum frequency, under a
    // symmetric envelope of width sigma about the degenerate point. epsilon <= 0
    // selects the default sigma/100.
    static JointSpectrum regularized_spdc(double omega0, double sigma, double epsilon = 0.0);
    // Narrow-line limit of (|omega,omega_tilde> + |omega_tilde,omega>)/sqrt(2);
    // width is the line regularization. Quantitative interference for this
    // family goes through the closed-form component rate, not quadrature.
    static JointSpectrum symmetric_basis_pair(double omega, double omega_tilde,
                                              double width = 0.01);
    static JointSpectrum tabulated(TabulatedGrid grid);
    static JointSpectrum tabulated_from_file(const std::string& path);

    SpectrumKind kind() const { return kind_; }
    Complex amplitude(double w, double wt) const;

    // Truncation box {lo1, hi1, lo2, hi2} covering at least 8 widths around
    // every center, identical on both axes for parametric families.
    std::array<double, 4> support() const;
    double min_feature_width() const;   // narrowest Gaussian scale present
    double phase_shift_scale() const;   // |time shift| for the shifted family, else 0
    double center_separation() const;   // |Omega - Omega_tilde| where defined, else 0
    bool is_symmetric(double tol = 1e-12) const;
    std::string describe() const;

    double omega() const { return omega_; }
    double omega_tilde() const { return omega_tilde_; }
    double sigma() const { return sigma_; }
    double time_shift() const { return time_shift_; }
    double sum_frequency() const { return omega0_; }
    double epsilon() const { return epsilon_; }
    double pair_width() const { return pair_width_; }
    const TabulatedGrid& grid() const;

private:
    JointSpectrum() = default;

    SpectrumKind kind_ = SpectrumKind::SymmetricGaussianProduct;
    double omega_ = 0.0, omega_tilde_ = 0.0, sigma_ = 1.0;
    double time_shift_ = 0.0;
    double omega0_ = 0.0, epsilon_ = 0.0;
    double pair_width_ = 0.0;
    TabulatedGrid grid_;
};

// Single-photon spectral density g(omega) >= 0; defaults to the flat unit
// density, which drops out of normalized rates.
class SpectralDensity {
public:
    SpectralDensity();  // unit
    static SpectralDensity unit();
    static SpectralDensity constant(double value);
    static SpectralDensity gaussian(double center, double width);
    static SpectralDensity custom(std::function<double(double)> fn, std::string label);

    double operator()(double w) const;
    std::string describe() const;

private:
    std::function<double(double)> fn_;
    std::string label_;
};

inline Complex eval_f(const JointSpectrum& spec, double w, double wt) {
    return spec.amplitude(w, wt);
}

// Detected joint amplitude F = (1/2) g(omega) f g(omega_tilde).
Complex eval_F(const JointSpectrum& spec, const SpectralDensity& g, double w, double wt);

// Exchange-antisymmetric part G = F(w,wt) - F(wt,w); identically zero iff the
// spectrum is exchange symmetric.
Complex asymmetry_G(const JointSpectrum& spec, const SpectralDensity& g, double w, double wt);

// Exchange-symmetrized copy, f_s = (f + f^T)/2, materialized as a Tabulated
// spectrum. The first overload samples any spectrum onto [lo,hi]^2 with n
// nodes per axis; the second requires an already tabulated spectrum on a
// square grid (DomainError otherwise).
JointSpectrum symmetrize(const JointSpectrum& spec, double lo, double hi, int n);
JointSpectrum symmetrize(const JointSpectrum& spec);

}  // namespace homsim
