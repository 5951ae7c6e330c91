#include "homsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "homsim/errors.hpp"

namespace homsim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double gauss(double x, double width) { return std::exp(-x * x / (2.0 * width * width)); }

// Unit-integral Gaussian line, the regularized delta.
double gauss_line(double x, double width) {
    return gauss(x, width) / (width * std::sqrt(2.0 * M_PI));
}

}  // namespace

// --- TabulatedGrid ---------------------------------------------------------

void TabulatedGrid::validate() const {
    if (n_omega < 2 || n_omega2 < 2) {
        throw DomainError("tabulated grid needs at least 2 nodes per axis");
    }
    if (!(omega_lo < omega_hi) || !(omega2_lo < omega2_hi)) {
        throw DomainError("tabulated grid needs lo < hi on both axes");
    }
    if (values.size() != static_cast<std::size_t>(n_omega) * static_cast<std::size_t>(n_omega2)) {
        throw DomainError("tabulated grid value count does not match axis sizes");
    }
    for (const Complex& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DomainError("tabulated grid holds non-finite values");
        }
    }
}

bool TabulatedGrid::square() const {
    return n_omega == n_omega2 && omega_lo == omega2_lo && omega_hi == omega2_hi;
}

Complex TabulatedGrid::interpolate(double w, double wt) const {
    if (!(w >= omega_lo && w <= omega_hi)) {
        throw DomainError("query omega=" + fmt(w) + " outside tabulated axis omega [" +
                          fmt(omega_lo) + ", " + fmt(omega_hi) + "]");
    }
    if (!(wt >= omega2_lo && wt <= omega2_hi)) {
        throw DomainError("query omega_tilde=" + fmt(wt) + " outside tabulated axis omega_tilde [" +
                          fmt(omega2_lo) + ", " + fmt(omega2_hi) + "]");
    }
    const double fx = (w - omega_lo) / (omega_hi - omega_lo) * (n_omega - 1);
    const double fy = (wt - omega2_lo) / (omega2_hi - omega2_lo) * (n_omega2 - 1);
    int i = std::min(static_cast<int>(fx), n_omega - 2);
    int j = std::min(static_cast<int>(fy), n_omega2 - 2);
    const double u = fx - i;
    const double v = fy - j;
    const auto at = [&](int a, int b) {
        return values[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_omega2) +
                      static_cast<std::size_t>(b)];
    };
    return (1.0 - u) * (1.0 - v) * at(i, j) + u * (1.0 - v) * at(i + 1, j) +
           (1.0 - u) * v * at(i, j + 1) + u * v * at(i + 1, j + 1);
}

TabulatedGrid load_tabulated_grid(std::istream& in) {
    std::string line;
    // First non-blank line is the header:
    // # omega_min omega_max n_omega omega2_min omega2_max n_omega2
    do {
        if (!std::getline(in, line)) throw DomainError("tabulated grid stream is empty");
    } while (line.find_first_not_of(" \t\r") == std::string::npos);
    const auto hash = line.find('#');
    if (hash == std::string::npos) {
        throw DomainError("tabulated grid header line must start with '#'");
    }
    std::istringstream head(line.substr(hash + 1));
    TabulatedGrid g;
    if (!(head >> g.omega_lo >> g.omega_hi >> g.n_omega >> g.omega2_lo >> g.omega2_hi >>
          g.n_omega2)) {
        throw DomainError("tabulated grid header is malformed");
    }
    if (g.n_omega < 2 || g.n_omega2 < 2) {
        throw DomainError("tabulated grid needs at least 2 nodes per axis");
    }
    const std::size_t count =
        static_cast<std::size_t>(g.n_omega) * static_cast<std::size_t>(g.n_omega2);
    g.values.reserve(count);
    double re = 0.0, im = 0.0;
    while (g.values.size() < count && (in >> re >> im)) {
        g.values.emplace_back(re, im);
    }
    if (g.values.size() != count) {
        throw DomainError("tabulated grid ended after " + std::to_string(g.values.size()) +
                          " of " + std::to_string(count) + " values");
    }
    g.validate();
    return g;
}

TabulatedGrid load_tabulated_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open tabulated grid file: " + path);
    return load_tabulated_grid(in);
}

void save_tabulated_grid(const TabulatedGrid& grid, std::ostream& out) {
    grid.validate();
    out << "# " << fmt(grid.omega_lo) << ' ' << fmt(grid.omega_hi) << ' ' << grid.n_omega << ' '
        << fmt(grid.omega2_lo) << ' ' << fmt(grid.omega2_hi) << ' ' << grid.n_omega2 << '\n';
    for (const Complex& v : grid.values) {
        out << fmt(v.real()) << ' ' << fmt(v.imag()) << '\n';
    }
}

// --- JointSpectrum ---------------------------------------------------------

JointSpectrum JointSpectrum::symmetric_gaussian(double omega, double sigma) {
    if (!(sigma > 0.0)) throw PreconditionError("symmetric_gaussian requires sigma > 0");
    JointSpectrum s;
    s.kind_ = SpectrumKind::SymmetricGaussianProduct;
    s.omega_ = omega;
    s.omega_tilde_ = omega;
    s.sigma_ = sigma;
    return s;
}

JointSpectrum JointSpectrum::asymmetric_gaussian(double omega, double omega_tilde, double sigma) {
    if (!(sigma > 0.0)) throw PreconditionError("asymmetric_gaussian requires sigma > 0");
    JointSpectrum s;
    s.kind_ = SpectrumKind::AsymmetricGaussianProduct;
    s.omega_ = omega;
    s.omega_tilde_ = omega_tilde;
    s.sigma_ = sigma;
    return s;
}

JointSpectrum JointSpectrum::time_shifted(double omega, double sigma, double time_shift) {
    if (!(sigma > 0.0)) throw PreconditionError("time_shifted requires sigma > 0");
    JointSpectrum s;
    s.kind_ = SpectrumKind::TimeShiftedProduct;
    s.omega_ = omega;
    s.omega_tilde_ = omega;
    s.sigma_ = sigma;
    s.time_shift_ = time_shift;
    return s;
}

JointSpectrum JointSpectrum::regularized_spdc(double omega0, double sigma, double epsilon) {
    if (!(sigma > 0.0)) throw PreconditionError("regularized_spdc requires sigma > 0");
    if (epsilon <= 0.0) epsilon = sigma / 100.0;
    JointSpectrum s;
    s.kind_ = SpectrumKind::RegularizedSpdc;
    s.omega0_ = omega0;
    s.sigma_ = sigma;
    s.epsilon_ = epsilon;
    s.omega_ = omega0 / 2.0;
    s.omega_tilde_ = omega0 / 2.0;
    return s;
}

JointSpectrum JointSpectrum::symmetric_basis_pair(double omega, double omega_tilde, double width) {
    if (!(width > 0.0)) throw PreconditionError("symmetric_basis_pair requires width > 0");
    JointSpectrum s;
    s.kind_ = SpectrumKind::SymmetricBasisPair;
    s.omega_ = omega;
    s.omega_tilde_ = omega_tilde;
    s.pair_width_ = width;
    s.sigma_ = width;
    return s;
}

JointSpectrum JointSpectrum::tabulated(TabulatedGrid grid) {
    grid.validate();
    JointSpectrum s;
    s.kind_ = SpectrumKind::Tabulated;
    s.grid_ = std::move(grid);
    return s;
}

JointSpectrum JointSpectrum::tabulated_from_file(const std::string& path) {
    return tabulated(load_tabulated_grid_file(path));
}

const TabulatedGrid& JointSpectrum::grid() const {
    if (kind_ != SpectrumKind::Tabulated) {
        throw PreconditionError("grid() is only available for tabulated spectra");
    }
    return grid_;
}

Complex JointSpectrum::amplitude(double w, double wt) const {
    switch (kind_) {
        case SpectrumKind::SymmetricGaussianProduct:
            return gauss(w - omega_, sigma_) * gauss(wt - omega_, sigma_);
        case SpectrumKind::AsymmetricGaussianProduct:
            return gauss(w - omega_, sigma_) * gauss(wt - omega_tilde_, sigma_);
        case SpectrumKind::TimeShiftedProduct: {
            const double mag = gauss(w - omega_, sigma_) * gauss(wt - omega_, sigma_);
            return mag * std::exp(Complex(0.0, -w * time_shift_));
        }
        case SpectrumKind::RegularizedSpdc: {
            const double c = omega0_ / 2.0;
            return gauss_line(w + wt - omega0_, epsilon_) * gauss(w - c, sigma_) *
                   gauss(wt - c, sigma_);
        }
        case SpectrumKind::SymmetricBasisPair: {
            const double a = gauss_line(w - omega_, pair_width_) *
                             gauss_line(wt - omega_tilde_, pair_width_);
            const double b = gauss_line(w - omega_tilde_, pair_width_) *
                             gauss_line(wt - omega_, pair_width_);
            return (a + b) / std::sqrt(2.0);
        }
        case SpectrumKind::Tabulated:
            return grid_.interpolate(w, wt);
    }
    throw PreconditionError("unknown spectrum kind");
}

std::array<double, 4> JointSpectrum::support() const {
    switch (kind_) {
        case SpectrumKind::SymmetricGaussianProduct:
        case SpectrumKind::TimeShiftedProduct:
            return {omega_ - 8.0 * sigma_, omega_ + 8.0 * sigma_, omega_ - 8.0 * sigma_,
                    omega_ + 8.0 * sigma_};
        case SpectrumKind::AsymmetricGaussianProduct:
            return {omega_ - 8.0 * sigma_, omega_ + 8.0 * sigma_, omega_tilde_ - 8.0 * sigma_,
                    omega_tilde_ + 8.0 * sigma_};
        case SpectrumKind::RegularizedSpdc: {
            const double c = omega0_ / 2.0;
            return {c - 8.0 * sigma_, c + 8.0 * sigma_, c - 8.0 * sigma_, c + 8.0 * sigma_};
        }
        case SpectrumKind::SymmetricBasisPair: {
            const double lo = std::min(omega_, omega_tilde_) - 8.0 * pair_width_;
            const double hi = std::max(omega_, omega_tilde_) + 8.0 * pair_width_;
            return {lo, hi, lo, hi};
        }
        case SpectrumKind::Tabulated:
            return {grid_.omega_lo, grid_.omega_hi, grid_.omega2_lo, grid_.omega2_hi};
    }
    throw PreconditionError("unknown spectrum kind");
}

double JointSpectrum::min_feature_width() const {
    switch (kind_) {
        case SpectrumKind::SymmetricGaussianProduct:
        case SpectrumKind::AsymmetricGaussianProduct:
        case SpectrumKind::TimeShiftedProduct:
            return sigma_;
        case SpectrumKind::RegularizedSpdc:
            return std::min(sigma_, epsilon_);
        case SpectrumKind::SymmetricBasisPair:
            return pair_width_;
        case SpectrumKind::Tabulated:
            return std::min(grid_.omega_hi - grid_.omega_lo, grid_.omega2_hi - grid_.omega2_lo) /
                   16.0;
    }
    throw PreconditionError("unknown spectrum kind");
}

double JointSpectrum::phase_shift_scale() const {
    return kind_ == SpectrumKind::TimeShiftedProduct ? std::abs(time_shift_) : 0.0;
}

double JointSpectrum::center_separation() const {
    switch (kind_) {
        case SpectrumKind::AsymmetricGaussianProduct:
        case SpectrumKind::SymmetricBasisPair:
            return std::abs(omega_ - omega_tilde_);
        default:
            return 0.0;
    }
}

bool JointSpectrum::is_symmetric(double tol) const {
    switch (kind_) {
        case SpectrumKind::SymmetricGaussianProduct:
        case SpectrumKind::RegularizedSpdc:
        case SpectrumKind::SymmetricBasisPair:
            return true;
        case SpectrumKind::AsymmetricGaussianProduct:
            return std::abs(omega_ - omega_tilde_) <= tol;
        case SpectrumKind::TimeShiftedProduct:
            return std::abs(time_shift_) <= tol;
        case SpectrumKind::Tabulated: {
            if (!grid_.square()) return false;
            double max_abs = 0.0, max_dev = 0.0;
            const int n = grid_.n_omega;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const Complex a = grid_.values[static_cast<std::size_t>(i) * n + j];
                    const Complex b = grid_.values[static_cast<std::size_t>(j) * n + i];
                    max_abs = std::max(max_abs, std::abs(a));
                    max_dev = std::max(max_dev, std::abs(a - b));
                }
            }
            return max_dev <= tol * std::max(max_abs, 1e-300);
        }
    }
    throw PreconditionError("unknown spectrum kind");
}

std::string JointSpectrum::describe() const {
    switch (kind_) {
        case SpectrumKind::SymmetricGaussianProduct:
            return "symmetric_gaussian(omega=" + fmt(omega_) + ", sigma=" + fmt(sigma_) + ")";
        case SpectrumKind::AsymmetricGaussianProduct:
            return "asymmetric_gaussian(omega=" + fmt(omega_) + ", omega_tilde=" +
                   fmt(omega_tilde_) + ", sigma=" + fmt(sigma_) + ")";
        case SpectrumKind::TimeShiftedProduct:
            return "time_shifted(omega=" + fmt(omega_) + ", sigma=" + fmt(sigma_) +
                   ", time_shift=" + fmt(time_shift_) + ")";
        case SpectrumKind::RegularizedSpdc:
            return "regularized_spdc(omega0=" + fmt(omega0_) + ", sigma=" + fmt(sigma_) +
                   ", epsilon=" + fmt(epsilon_) + ")";
        case SpectrumKind::SymmetricBasisPair:
            return "symmetric_basis_pair(omega=" + fmt(omega_) + ", omega_tilde=" +
                   fmt(omega_tilde_) + ", width=" + fmt(pair_width_) + ")";
        case SpectrumKind::Tabulated:
            return "tabulated(" + std::to_string(grid_.n_omega) + "x" +
                   std::to_string(grid_.n_omega2) + ", omega=[" + fmt(grid_.omega_lo) + "," +
                   fmt(grid_.omega_hi) + "], omega_tilde=[" + fmt(grid_.omega2_lo) + "," +
                   fmt(grid_.omega2_hi) + "])";
    }
    throw PreconditionError("unknown spectrum kind");
}

// --- SpectralDensity -------------------------------------------------------

SpectralDensity::SpectralDensity() : fn_([](double) { return 1.0; }), label_("unit") {}

SpectralDensity SpectralDensity::unit() { return SpectralDensity(); }

SpectralDensity SpectralDensity::constant(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw PreconditionError("spectral density constant must be nonnegative and finite");
    }
    SpectralDensity g;
    g.fn_ = [value](double) { return value; };
    g.label_ = "constant(" + fmt(value) + ")";
    return g;
}

SpectralDensity SpectralDensity::gaussian(double center, double width) {
    if (!(width > 0.0)) throw PreconditionError("spectral density gaussian requires width > 0");
    SpectralDensity g;
    g.fn_ = [center, width](double w) { return gauss(w - center, width); };
    g.label_ = "gaussian(center=" + fmt(center) + ", width=" + fmt(width) + ")";
    return g;
}

SpectralDensity SpectralDensity::custom(std::function<double(double)> fn, std::string label) {
    if (!fn) throw PreconditionError("spectral density callable must be nonempty");
    SpectralDensity g;
    g.fn_ = std::move(fn);
    g.label_ = std::move(label);
    return g;
}

double SpectralDensity::operator()(double w) const {
    const double v = fn_(w);
    if (!(v >= 0.0)) {
        throw PreconditionError("spectral density negative at omega=" + fmt(w));
    }
    return v;
}

std::string SpectralDensity::describe() const { return label_; }

// --- derived amplitudes ----------------------------------------------------

Complex eval_F(const JointSpectrum& spec, const SpectralDensity& g, double w, double wt) {
    return 0.5 * g(w) * spec.amplitude(w, wt) * g(wt);
}

Complex asymmetry_G(const JointSpectrum& spec, const SpectralDensity& g, double w, double wt) {
    return eval_F(spec, g, w, wt) - eval_F(spec, g, wt, w);
}

JointSpectrum symmetrize(const JointSpectrum& spec, double lo, double hi, int n) {
    if (!(lo < hi)) throw DomainError("symmetrize requires lo < hi");
    if (n < 2) throw DomainError("symmetrize requires at least 2 nodes per axis");
    TabulatedGrid g;
    g.omega_lo = g.omega2_lo = lo;
    g.omega_hi = g.omega2_hi = hi;
    g.n_omega = g.n_omega2 = n;
    g.values.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = lo + i * step;
        for (int j = 0; j < n; ++j) {
            const double y = lo + j * step;
            g.values[static_cast<std::size_t>(i) * n + j] =
                0.5 * (spec.amplitude(x, y) + spec.amplitude(y, x));
        }
    }
    return JointSpectrum::tabulated(std::move(g));
}

JointSpectrum symmetrize(const JointSpectrum& spec) {
    if (spec.kind() != SpectrumKind::Tabulated) {
        throw DomainError("in-place symmetrization needs a tabulated spectrum; "
                          "supply sampling bounds for parametric families");
    }
    const TabulatedGrid& src = spec.grid();
    if (!src.square()) {
        throw DomainError("symmetrization requires a square tabulated grid");
    }
    TabulatedGrid g = src;
    const int n = g.n_omega;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g.values[static_cast<std::size_t>(i) * n + j] =
                0.5 * (src.values[static_cast<std::size_t>(i) * n + j] +
                       src.values[static_cast<std::size_t>(j) * n + i]);
        }
    }
    return JointSpectrum::tabulated(std::move(g));
}

}  // namespace homsim
