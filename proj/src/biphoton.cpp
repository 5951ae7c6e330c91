#include "homsim/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "homsim/errors.hpp"

namespace homsim {

namespace {

// Raw rates may dip below zero by quadrature noise only; scale is the 2N
// asymptote the slack is measured against.
double clamp_rate(double raw, double scale) {
    if (raw < -kNegativeRateSlack * scale) {
        throw NumericalConsistencyError("rate " + format_float(raw) +
                                        " below the negative-noise slack for scale " +
                                        format_float(scale));
    }
    return raw < 0.0 ? 0.0 : raw;
}

double checked_norm(const BiphotonSystem& sys, const QuadratureGrid& grid) {
    const double n = spectral_norm_on(sys, grid);
    if (!(n > 0.0)) {
        throw NumericalConsistencyError("spectral norm vanished; spectrum carries no weight");
    }
    return n;
}

double raw_rate(const BiphotonSystem& sys, double n, double k) {
    const double r = sys.splitter.reflectivity();
    const double t = sys.splitter.transmissivity();
    return 4.0 * (r * r + t * t) * n - 8.0 * r * t * k;
}

std::string system_description(const BiphotonSystem& sys) {
    return sys.spectrum.describe() + "; splitter(R=" + format_float(sys.splitter.reflectivity()) +
           ", T=" + format_float(sys.splitter.transmissivity()) + "); density=" +
           sys.density.describe();
}

}  // namespace

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double spectral_norm_on(const BiphotonSystem& sys, const QuadratureGrid& grid) {
    const auto& spec = sys.spectrum;
    const auto& g = sys.density;
    const auto res = integrate_2d(grid, [&](double w, double wt) -> Complex {
        const Complex f = eval_F(spec, g, w, wt);
        return Complex(std::norm(f), 0.0);
    });
    return res.value.real();
}

double spectral_norm(const BiphotonSystem& sys) {
    return spectral_norm_on(sys, auto_grid(sys.spectrum, 0.0, sys.tolerance));
}

double overlap_kernel_on(const BiphotonSystem& sys, const QuadratureGrid& grid, double d) {
    const auto& spec = sys.spectrum;
    const auto& g = sys.density;
    const auto res = integrate_2d(grid, [&](double w, double wt) -> Complex {
        const Complex a = eval_F(spec, g, w, wt);
        const Complex b = std::conj(eval_F(spec, g, wt, w));
        return a * b * std::exp(Complex(0.0, -(w - wt) * d));
    });
    // The swap symmetry of the integrand makes K real; the imaginary residue
    // is pure rounding and is dropped.
    return res.value.real();
}

double overlap_kernel(const BiphotonSystem& sys, double d) {
    return overlap_kernel_on(sys, auto_grid(sys.spectrum, std::abs(d), sys.tolerance), d);
}

// --- wavepacket ------------------------------------------------------------

WavepacketPlan::WavepacketPlan(const BiphotonSystem& sys, double tau_scale, double d_max)
    : grid_(auto_grid(sys.spectrum, std::abs(tau_scale) + std::abs(d_max), sys.tolerance)),
      r_(sys.splitter.reflectivity()),
      t_(sys.splitter.transmissivity()) {
    const std::size_t n1 = static_cast<std::size_t>(grid_.axis1.n);
    const std::size_t n2 = static_cast<std::size_t>(grid_.axis2.n);
    if (n1 * n2 > 25'000'000) {
        throw PreconditionError("time-domain plan would cache " + std::to_string(n1 * n2) +
                                " amplitude nodes; spectrum features are too narrow for "
                                "the time-domain route");
    }
    fw_.resize(n1 * n2);
    for (std::size_t j = 0; j < n1; ++j) {
        const double w = grid_.axis1.nodes[j];
        const double wj = grid_.axis1.weights[j];
        for (std::size_t k = 0; k < n2; ++k) {
            const double wt = grid_.axis2.nodes[k];
            const Complex f = eval_F(sys.spectrum, sys.density, w, wt);
            if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) {
                throw QuadratureError("non-finite amplitude at node (" + format_float(w) + ", " +
                                      format_float(wt) + ")");
            }
            fw_[j * n2 + k] = wj * grid_.axis2.weights[k] * f;
        }
    }
}

std::complex<double> WavepacketPlan::eval(double tau1p, double tau2p, double d) const {
    const std::size_t n1 = static_cast<std::size_t>(grid_.axis1.n);
    const std::size_t n2 = static_cast<std::size_t>(grid_.axis2.n);
    const double tau1 = tau1p + d;
    const double tau2 = tau2p - d;

    std::vector<Complex> u(n2), q(n2), v(n1), s(n1);
    for (std::size_t k = 0; k < n2; ++k) {
        const double wt = grid_.axis2.nodes[k];
        u[k] = std::exp(Complex(0.0, -wt * tau1p));
        q[k] = std::exp(Complex(0.0, -wt * tau2));
    }
    for (std::size_t j = 0; j < n1; ++j) {
        const double w = grid_.axis1.nodes[j];
        v[j] = std::exp(Complex(0.0, -w * tau2p));
        s[j] = std::exp(Complex(0.0, -w * tau1));
    }

    // Transmitted pairing: B photon at port 1 (tau1p), A photon at port 2
    // (tau2p). Reflected pairing: A at port 1 (tau1), B at port 2 (tau2).
    std::vector<Complex> acc(n1);
    std::vector<Complex> row(n2);
    for (std::size_t j = 0; j < n1; ++j) {
        for (std::size_t k = 0; k < n2; ++k) row[k] = fw_[j * n2 + k] * u[k];
        acc[j] = v[j] * pairwise_sum(row);
    }
    const Complex transmitted = pairwise_sum(acc);
    for (std::size_t j = 0; j < n1; ++j) {
        for (std::size_t k = 0; k < n2; ++k) row[k] = fw_[j * n2 + k] * q[k];
        acc[j] = s[j] * pairwise_sum(row);
    }
    const Complex reflected = pairwise_sum(acc);

    return 2.0 * (t_ * transmitted - r_ * reflected);
}

double WavepacketPlan::integrated_power(const AxisRule& outer, double d) const {
    const std::size_t n1 = static_cast<std::size_t>(grid_.axis1.n);
    const std::size_t n2 = static_cast<std::size_t>(grid_.axis2.n);
    const std::size_t m = outer.nodes.size();

    // Per outer node x: a[x] = FW u(x) with u_k = exp(-i wt_k x) drives the
    // transmitted term through tau1p; b[x] = FW q(x) with q_k = exp(-i wt_k
    // (x - d)) drives the reflected term through tau2p. v and s are the
    // matching row phases.
    std::vector<Complex> a(m * n1), b(m * n1), v(m * n1), s(m * n1);
    std::vector<Complex> u(n2), q(n2);
    for (std::size_t x = 0; x < m; ++x) {
        const double tau = outer.nodes[x];
        for (std::size_t k = 0; k < n2; ++k) {
            const double wt = grid_.axis2.nodes[k];
            u[k] = std::exp(Complex(0.0, -wt * tau));
            q[k] = std::exp(Complex(0.0, -wt * (tau - d)));
        }
        for (std::size_t j = 0; j < n1; ++j) {
            Complex au{0.0, 0.0}, bq{0.0, 0.0};
            const Complex* fwj = fw_.data() + j * n2;
            for (std::size_t k = 0; k < n2; ++k) {
                au += fwj[k] * u[k];
                bq += fwj[k] * q[k];
            }
            a[x * n1 + j] = au;
            b[x * n1 + j] = bq;
            const double w = grid_.axis1.nodes[j];
            v[x * n1 + j] = std::exp(Complex(0.0, -w * tau));
            s[x * n1 + j] = std::exp(Complex(0.0, -w * (tau + d)));
        }
    }

    std::vector<Complex> rows(m), row(m);
    for (std::size_t x1 = 0; x1 < m; ++x1) {
        const Complex* ax = a.data() + x1 * n1;
        const Complex* bxr = b.data();  // indexed by x2 below
        const Complex* sx = s.data() + x1 * n1;
        for (std::size_t x2 = 0; x2 < m; ++x2) {
            const Complex* vx = v.data() + x2 * n1;
            Complex transmitted{0.0, 0.0}, reflected{0.0, 0.0};
            const Complex* bx = bxr + x2 * n1;
            for (std::size_t j = 0; j < n1; ++j) {
                transmitted += vx[j] * ax[j];
                reflected += sx[j] * bx[j];
            }
            const Complex psi = 2.0 * (t_ * transmitted - r_ * reflected);
            row[x2] = Complex(outer.weights[x2] * std::norm(psi), 0.0);
        }
        rows[x1] = outer.weights[x1] * pairwise_sum(row);
    }
    return pairwise_sum(rows).real();
}

std::complex<double> wavepacket(const BiphotonSystem& sys, double tau1p, double tau2p, double d) {
    const double tau_scale = std::max(std::abs(tau1p), std::abs(tau2p));
    const WavepacketPlan plan(sys, tau_scale, std::abs(d));
    return plan.eval(tau1p, tau2p, d);
}

std::pair<std::complex<double>, std::complex<double>>
psi_split(const BiphotonSystem& sys, double tau1p, double tau2p, double d) {
    if (!sys.splitter.is_balanced()) {
        throw UnsupportedDecompositionError(
            "the interference/exchange decomposition exists for the balanced splitter only");
    }
    const double tau_scale = std::max(std::abs(tau1p), std::abs(tau2p));
    const QuadratureGrid grid =
        auto_grid(sys.spectrum, tau_scale + std::abs(d), sys.tolerance);
    const auto& spec = sys.spectrum;
    const auto& g = sys.density;

    const auto psi1 = integrate_2d(grid, [&](double w, double wt) -> Complex {
        const Complex f = eval_F(spec, g, w, wt);
        const Complex phase = std::exp(Complex(0.0, -(w * tau1p + wt * tau2p)));
        const Complex comb = 1.0 - std::exp(Complex(0.0, -(w - wt) * d));
        return f * phase * comb;
    });
    const auto psi2 = integrate_2d(grid, [&](double w, double wt) -> Complex {
        const Complex gg = asymmetry_G(spec, g, w, wt);
        return gg * std::exp(Complex(0.0, -(w * tau2p + wt * tau1p)));
    });
    return {psi1.value, psi2.value};
}

// --- rates -----------------------------------------------------------------

double rate_spectral(const BiphotonSystem& sys, double d) {
    const QuadratureGrid grid = auto_grid(sys.spectrum, std::abs(d), sys.tolerance);
    const double n = checked_norm(sys, grid);
    const double k = overlap_kernel_on(sys, grid, d);
    return clamp_rate(raw_rate(sys, n, k), 2.0 * n);
}

double rate_timedomain(const BiphotonSystem& sys, double d) {
    const auto box = sys.spectrum.support();
    const double tau_half = 8.0 / sys.spectrum.min_feature_width() + std::abs(d) +
                            sys.spectrum.phase_shift_scale();
    // The broad spectral envelope sets the finest time structure of |psi|^2,
    // the center separation its beat frequency.
    const double finest_time = 16.0 / (box[1] - box[0]);
    const double beat = sys.spectrum.center_separation();
    const double w_tau = 2.0 * tau_half;
    int n_outer = std::max<int>(
        64, static_cast<int>(std::ceil(std::max(4.0 * w_tau / finest_time,
                                                8.0 * w_tau * beat / (2.0 * M_PI)))));
    n_outer = std::min(n_outer, 1024);

    const WavepacketPlan plan(sys, tau_half, std::abs(d));
    const AxisRule outer(-tau_half, tau_half, n_outer);
    const double raw = plan.integrated_power(outer, d) / (4.0 * M_PI * M_PI);
    const double n = checked_norm(sys, plan.grid());
    return clamp_rate(raw, 2.0 * n);
}

double component_rate(double omega, double omega_tilde, double d) {
    return 1.0 - std::cos((omega - omega_tilde) * d);
}

double asymmetry_norm(const BiphotonSystem& sys) {
    const QuadratureGrid grid = auto_grid(sys.spectrum, 0.0, sys.tolerance);
    const auto res = integrate_2d(grid, [&](double w, double wt) -> Complex {
        return Complex(std::norm(asymmetry_G(sys.spectrum, sys.density, w, wt)), 0.0);
    });
    return clamp_rate(res.value.real(), 2.0 * checked_norm(sys, grid));
}

// --- curve -----------------------------------------------------------------

CoincidenceCurve::CoincidenceCurve(std::vector<CoincidencePoint> points, double normalization,
                                   std::string description)
    : points_(std::move(points)),
      normalization_(normalization),
      description_(std::move(description)) {
    if (!(normalization_ > 0.0)) {
        throw PreconditionError("coincidence curve needs a positive normalization");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i].rate >= 0.0) || !(points_[i].rate_normalized >= 0.0)) {
            throw PreconditionError("coincidence curve rates must be nonnegative");
        }
        if (i > 0 && !(points_[i - 1].d < points_[i].d)) {
            throw PreconditionError("coincidence curve scan positions must strictly increase");
        }
    }
}

void CoincidenceCurve::to_csv(std::ostream& out) const {
    out << "D,rate,rate_normalized\n";
    for (const auto& p : points_) {
        out << format_float(p.d) << ',' << format_float(p.rate) << ','
            << format_float(p.rate_normalized) << '\n';
    }
    out << "# normalization=" << format_float(normalization_) << '\n';
    out << "# spec=" << description_ << '\n';
}

std::string CoincidenceCurve::to_csv_string() const {
    std::ostringstream out;
    to_csv(out);
    return out.str();
}

CoincidenceCurve CoincidenceCurve::from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "D,rate,rate_normalized") {
        throw PreconditionError("coincidence CSV must start with header D,rate,rate_normalized");
    }
    std::vector<CoincidencePoint> pts;
    double normalization = 0.0;
    bool have_norm = false;
    std::string description;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# normalization=", 0) == 0) {
            normalization = std::stod(line.substr(16));
            have_norm = true;
            continue;
        }
        if (line.rfind("# spec=", 0) == 0) {
            description = line.substr(7);
            continue;
        }
        if (line[0] == '#') continue;
        CoincidencePoint p;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p.d, &p.rate, &p.rate_normalized) != 3) {
            throw PreconditionError("coincidence CSV row is malformed: " + line);
        }
        pts.push_back(p);
    }
    if (!have_norm) {
        throw PreconditionError("coincidence CSV is missing the normalization trailer");
    }
    return CoincidenceCurve(std::move(pts), normalization, std::move(description));
}

CoincidenceCurve CoincidenceCurve::from_csv_string(const std::string& text) {
    std::istringstream in(text);
    return from_csv(in);
}

CoincidenceCurve sweep(const BiphotonSystem& sys, const std::vector<double>& d_values) {
    for (std::size_t i = 1; i < d_values.size(); ++i) {
        if (!(d_values[i - 1] < d_values[i])) {
            throw PreconditionError("sweep positions must be strictly ascending");
        }
    }
    double d_max = 0.0;
    for (double d : d_values) d_max = std::max(d_max, std::abs(d));

    const QuadratureGrid grid = auto_grid(sys.spectrum, d_max, sys.tolerance);
    const double n = checked_norm(sys, grid);
    const double scale = 2.0 * n;

    std::vector<CoincidencePoint> pts;
    pts.reserve(d_values.size());
    for (double d : d_values) {
        const double k = overlap_kernel_on(sys, grid, d);
        CoincidencePoint p;
        p.d = d;
        p.rate = clamp_rate(raw_rate(sys, n, k), scale);
        p.rate_normalized = p.rate / scale;
        pts.push_back(p);
    }
    return CoincidenceCurve(std::move(pts), scale, system_description(sys));
}

}  // namespace homsim
