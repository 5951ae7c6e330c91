#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "doctest.h"
#include "homsim/biphoton.hpp"
#include "homsim/polarization.hpp"
#include "homsim/quadrature.hpp"

using namespace homsim;

namespace {

PolarizedBiphoton singlet(double omega = 10.0, double sigma = 1.0) {
    return PolarizedBiphoton{JointSpectrum::symmetric_gaussian(omega, sigma),
                             PairingSign::Singlet};
}

PolarizedBiphoton triplet(double omega = 10.0, double sigma = 1.0) {
    return PolarizedBiphoton{JointSpectrum::symmetric_gaussian(omega, sigma),
                             PairingSign::Triplet};
}

// Independent four-component evaluation of the polarized coincidence rate
// for the antisymmetric pairing: each polarization assignment (HV, VH)
// contributes a direct and an exchanged splitter routing, projected on the
// two analyzers, and the rate is iint |M|^2 of the four-term sum. No xi/eta
// factorization is assumed anywhere.
double four_component_rate(const JointSpectrum& spec, double theta1, double theta2, double d) {
    const SpectralDensity flat;
    const QuadratureGrid grid = auto_grid(spec, std::abs(d));
    const double c1 = std::cos(theta1), s1 = std::sin(theta1);
    const double c2 = std::cos(theta2), s2 = std::sin(theta2);
    const double sign = -1.0;  // antisymmetric combination of HV and VH
    const auto res = integrate_2d(grid, [&](double w, double wt) {
        const Complex fw = eval_F(spec, flat, w, wt);
        const Complex ft = eval_F(spec, flat, wt, w);
        const Complex pw = std::exp(Complex(0.0, -w * d));  // scanned-arm phase
        const Complex pt = std::exp(Complex(0.0, -wt * d));
        // Direct routing sends both photons through reflection (i/sqrt2 twice,
        // hence the -1/2), the exchanged routing through transmission (+1/2)
        // with the arguments of F swapped.
        const Complex term_hv = -0.5 * c1 * s2 * pw * fw + 0.5 * s1 * c2 * pt * ft;
        const Complex term_vh = -0.5 * s1 * c2 * pw * fw + 0.5 * c1 * s2 * pt * ft;
        const Complex m = (term_hv + sign * term_vh) / std::sqrt(2.0);
        return Complex(std::norm(m), 0.0);
    });
    return res.value.real();
}

}  // namespace

TEST_CASE("analyzer factor vanishes for parallel analyzers") {
    for (double theta : {0.0, 0.3, 1.2, 2.9}) {
        CHECK(xi(AnalyzerPair(theta, theta)) == 0.0);
    }
}

TEST_CASE("analyzer factor is maximal and equal to 1/8 for crossed analyzers") {
    CHECK(xi(AnalyzerPair(0.0, M_PI_2)) == 0.125);
    CHECK(xi(AnalyzerPair(M_PI_2, 0.0)) == 0.125);
    for (double theta : {0.1, 0.7, 1.9}) {
        CHECK(xi(AnalyzerPair(theta, theta + M_PI_2)) == doctest::Approx(0.125).epsilon(1e-14));
    }
}

TEST_CASE("analyzer factor depends only on the angle difference modulo pi") {
    std::mt19937 rng(88);
    std::uniform_real_distribution<double> ang(-6.0, 6.0);
    for (int i = 0; i < 100; ++i) {
        const double t1 = ang(rng), t2 = ang(rng), shift = ang(rng);
        const double a = xi(AnalyzerPair(t1, t2));
        const double b = xi(AnalyzerPair(t1 + shift, t2 + shift));
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
        CHECK(a >= 0.0);
        CHECK(a <= 0.125 + 1e-15);
        CHECK(xi(AnalyzerPair(t1 + M_PI, t2)) == doctest::Approx(a).epsilon(1e-10));
    }
}

TEST_CASE("singlet pairing peaks at zero path difference") {
    const auto pb = singlet();
    const double n = spectral_norm(BiphotonSystem{pb.spectrum});
    CHECK(eta(pb, 0.0) == doctest::Approx(4.0 * n).epsilon(1e-12));
    // The peak decays toward the 2N asymptote.
    CHECK(eta(pb, 1.0) < eta(pb, 0.0));
    CHECK(eta(pb, 5.0) == doctest::Approx(2.0 * n).epsilon(1e-5));
}

TEST_CASE("triplet pairing reproduces the scalar dip bit for bit") {
    const auto pb = triplet();
    const BiphotonSystem scalar{pb.spectrum};
    for (double d : {0.0, 0.3, 1.0, 2.4, 4.0}) {
        CHECK(eta(pb, d) == rate_spectral(scalar, d));
    }
}

TEST_CASE("the two pairings sum to twice the asymptote") {
    const auto ps = singlet();
    const auto pt = triplet();
    const double n = spectral_norm(BiphotonSystem{ps.spectrum});
    for (double d : {0.0, 0.5, 1.3, 3.0}) {
        CHECK(eta(ps, d) + eta(pt, d) == doctest::Approx(4.0 * n).epsilon(1e-12));
    }
}

TEST_CASE("polarized rate factorizes into analyzer and spectral parts") {
    const auto pb = singlet();
    const AnalyzerPair crossed(0.2, 0.2 + M_PI_2);
    for (double d : {0.0, 0.8, 2.0}) {
        CHECK(coincidence_rate_polarized(pb, crossed, d) ==
              doctest::Approx(xi(crossed) * eta(pb, d)).epsilon(1e-14));
    }
    const AnalyzerPair parallel(0.7, 0.7);
    CHECK(coincidence_rate_polarized(pb, parallel, 0.4) == 0.0);
}

TEST_CASE("four-component amplitude sum confirms the factorized singlet rate") {
    const auto specs = {JointSpectrum::symmetric_gaussian(10.0, 1.0),
                        JointSpectrum::asymmetric_gaussian(10.0, 9.0, 1.0)};
    for (const auto& spec : specs) {
        const PolarizedBiphoton pb{spec, PairingSign::Singlet};
        for (const auto& [t1, t2] : {std::pair{0.0, M_PI_2}, std::pair{0.3, 1.1}}) {
            for (double d : {0.0, 0.9}) {
                const double direct = four_component_rate(spec, t1, t2, d);
                const double factored = coincidence_rate_polarized(pb, AnalyzerPair(t1, t2), d);
                CHECK(direct == doctest::Approx(factored).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("curvature at the origin separates the two pairings") {
    // Frozen reference: 2 iint |F|^2 (w - wt)^2 = 2 N sigma^2 = pi/2 for the
    // canonical gaussian. Central difference with h = 1e-3 is accurate to
    // a few parts in 1e7.
    const double singlet_curv = eta_curvature_at_zero(singlet());
    const double triplet_curv = eta_curvature_at_zero(triplet());
    CHECK(singlet_curv < 0.0);
    CHECK(triplet_curv > 0.0);
    CHECK(std::abs(singlet_curv) == doctest::Approx(1.5707963267948966).epsilon(1e-5));
    CHECK(std::abs(triplet_curv) == doctest::Approx(1.5707963267948966).epsilon(1e-5));

    // Wider bandwidth: curvature scales as sigma^2 through N sigma^2 ~ sigma^4.
    const double wide = eta_curvature_at_zero(singlet(10.0, 2.0));
    CHECK(std::abs(wide) == doctest::Approx(M_PI_2 * 16.0).epsilon(1e-5));
}

TEST_CASE("curvature requires an exchange-symmetric spectrum") {
    const PolarizedBiphoton pb{JointSpectrum::asymmetric_gaussian(10.0, 9.0, 1.0),
                               PairingSign::Singlet};
    CHECK_THROWS_AS(eta_curvature_at_zero(pb), PreconditionError);
}

TEST_CASE("polar CSV round-trips rows and trailers") {
    std::vector<PolarPoint> rows;
    for (int i = 0; i < 4; ++i) {
        PolarPoint p;
        p.theta1 = 0.1 * i;
        p.theta2 = 0.1 * i + M_PI_2;
        p.xi = 0.125;
        p.d = -1.0 + i * 0.5;
        p.eta = 1.0 + i;
        p.rate = p.xi * p.eta;
        rows.push_back(p);
    }
    std::ostringstream out;
    write_polar_csv(out, rows, 3.14, "test spectrum");
    const std::string text = out.str();
    CHECK(text.rfind("theta1,theta2,xi,D,eta,rate\n", 0) == 0);
    CHECK(text.find("# normalization=") != std::string::npos);
    CHECK(text.find("# spec=test spectrum") != std::string::npos);

    std::istringstream in(text);
    const auto back = parse_polar_csv(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].theta1 == rows[i].theta1);
        CHECK(back[i].theta2 == rows[i].theta2);
        CHECK(back[i].xi == rows[i].xi);
        CHECK(back[i].d == rows[i].d);
        CHECK(back[i].eta == rows[i].eta);
        CHECK(back[i].rate == rows[i].rate);
    }
}
