#include "homsim/polarization.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "homsim/biphoton.hpp"
#include "homsim/errors.hpp"

namespace homsim {

namespace {

double wrap_angle(double theta) {
    if (!std::isfinite(theta)) throw PreconditionError("analyzer angle must be finite");
    double t = std::fmod(theta, M_PI);
    if (t < 0.0) t += M_PI;
    return t;
}

BiphotonSystem scalar_view(const PolarizedBiphoton& pb) {
    // Flat density and a balanced splitter: the polarized layer shares the
    // scalar kernel machinery with no extra weighting.
    return BiphotonSystem{pb.spectrum, SpectralDensity::unit(), BeamSplitter::balanced(),
                          Geometry{}, pb.tolerance};
}

double eta_on(const PolarizedBiphoton& pb, const BiphotonSystem& sys,
              const QuadratureGrid& grid, double d) {
    const double n = spectral_norm_on(sys, grid);
    const double k = overlap_kernel_on(sys, grid, d);
    const double sign = pb.sign == PairingSign::Singlet ? -1.0 : 1.0;
    const double raw = 2.0 * n - 2.0 * sign * k;
    if (raw < -kNegativeRateSlack * 2.0 * n) {
        throw NumericalConsistencyError("eta fell below the negative-noise slack");
    }
    return raw < 0.0 ? 0.0 : raw;
}

}  // namespace

AnalyzerPair::AnalyzerPair(double t1, double t2) : theta1(wrap_angle(t1)), theta2(wrap_angle(t2)) {}

double xi(const AnalyzerPair& pair) {
    const double s = std::sin(pair.theta1 - pair.theta2);
    return s * s / 8.0;
}

double eta(const PolarizedBiphoton& pb, double d) {
    const BiphotonSystem sys = scalar_view(pb);
    const QuadratureGrid grid = auto_grid(pb.spectrum, std::abs(d), pb.tolerance);
    return eta_on(pb, sys, grid, d);
}

double coincidence_rate_polarized(const PolarizedBiphoton& pb, const AnalyzerPair& pair,
                                  double d) {
    return xi(pair) * eta(pb, d);
}

double eta_curvature_at_zero(const PolarizedBiphoton& pb) {
    if (!pb.spectrum.is_symmetric()) {
        throw PreconditionError(
            "eta curvature at zero requires an exchange-symmetric spectrum");
    }
    const double h = 1e-3;
    const BiphotonSystem sys = scalar_view(pb);
    // One shared grid keeps the quadrature error identical at -h, 0, +h, so
    // it cancels from the differences.
    const QuadratureGrid grid = auto_grid(pb.spectrum, h, pb.tolerance);
    const double em = eta_on(pb, sys, grid, -h);
    const double e0 = eta_on(pb, sys, grid, 0.0);
    const double ep = eta_on(pb, sys, grid, h);
    return (ep - 2.0 * e0 + em) / (h * h);
}

void write_polar_csv(std::ostream& out, const std::vector<PolarPoint>& rows,
                     double normalization, const std::string& description) {
    out << "theta1,theta2,xi,D,eta,rate\n";
    for (const auto& r : rows) {
        out << format_float(r.theta1) << ',' << format_float(r.theta2) << ','
            << format_float(r.xi) << ',' << format_float(r.d) << ',' << format_float(r.eta)
            << ',' << format_float(r.rate) << '\n';
    }
    out << "# normalization=" << format_float(normalization) << '\n';
    out << "# spec=" << description << '\n';
}

std::vector<PolarPoint> parse_polar_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "theta1,theta2,xi,D,eta,rate") {
        throw PreconditionError("polar CSV must start with header theta1,theta2,xi,D,eta,rate");
    }
    std::vector<PolarPoint> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        PolarPoint p;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &p.theta1, &p.theta2, &p.xi,
                        &p.d, &p.eta, &p.rate) != 6) {
            throw PreconditionError("polar CSV row is malformed: " + line);
        }
        rows.push_back(p);
    }
    return rows;
}

}  // namespace homsim
