#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "homsim/quadrature.hpp"

using namespace homsim;

namespace {

double integrate_1d(const AxisRule& ax, double (*f)(double)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ax.nodes.size(); ++i) acc += ax.weights[i] * f(ax.nodes[i]);
    return acc;
}

}  // namespace

TEST_CASE("axis rule is exact for polynomials up to degree 2n-1") {
    const AxisRule ax(0.0, 1.0, 8);
    double acc = 0.0;
    // x^15 on [0,1]: the hardest monomial an 8-point rule must still nail.
    for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
        acc += ax.weights[i] * std::pow(ax.nodes[i], 15);
    }
    CHECK(acc == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("axis rule integrates sin over a period") {
    const AxisRule ax(0.0, M_PI, 24);
    CHECK(integrate_1d(ax, std::sin) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("axis rule nodes are symmetric with positive weights") {
    const AxisRule ax(-3.0, 5.0, 33);
    REQUIRE(ax.nodes.size() == 33);
    REQUIRE(ax.weights.size() == 33);
    double wsum = 0.0;
    for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
        CHECK(ax.weights[i] > 0.0);
        wsum += ax.weights[i];
        // Mirror node about the interval midpoint.
        const double mirrored = (-3.0 + 5.0) - ax.nodes[ax.nodes.size() - 1 - i];
        CHECK(ax.nodes[i] == doctest::Approx(mirrored).epsilon(1e-13));
        CHECK(ax.nodes[i] > -3.0);
        CHECK(ax.nodes[i] < 5.0);
        if (i > 0) CHECK(ax.nodes[i] > ax.nodes[i - 1]);
    }
    CHECK(wsum == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("axis rule rejects degenerate requests") {
    CHECK_THROWS_AS(AxisRule(0.0, 1.0, 1), PreconditionError);
    CHECK_THROWS_AS(AxisRule(0.0, 1.0, 0), PreconditionError);
    CHECK_THROWS_AS(AxisRule(1.0, 1.0, 8), PreconditionError);
    CHECK_THROWS_AS(AxisRule(2.0, 1.0, 8), PreconditionError);
}

TEST_CASE("pairwise sum matches sequential sum on exact inputs") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dist(-1000, 1000);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 300);
        std::vector<std::complex<double>> buf(n);
        std::complex<double> plain{0.0, 0.0};
        for (auto& v : buf) {
            v = {static_cast<double>(dist(rng)), static_cast<double>(dist(rng))};
            plain += v;  // integer-valued, so both orders are exact
        }
        CHECK(pairwise_sum(buf) == plain);
    }
}

TEST_CASE("pairwise sum is reproducible bit for bit") {
    std::mt19937 rng(999);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<std::complex<double>> buf(1000);
    for (auto& v : buf) v = {dist(rng), dist(rng)};
    auto copy1 = buf;
    auto copy2 = buf;
    const auto s1 = pairwise_sum(copy1);
    const auto s2 = pairwise_sum(copy2);
    CHECK(s1.real() == s2.real());
    CHECK(s1.imag() == s2.imag());
}

TEST_CASE("tensor quadrature reproduces a closed-form oscillatory integral") {
    // iint exp(-w^2 - wt^2) cos(5 (w - wt)) dw dwt over the plane equals
    // pi exp(-12.5); the box [-8, 8]^2 truncates below 1e-27.
    QuadratureGrid grid;
    grid.axis1 = AxisRule(-8.0, 8.0, 80);
    grid.axis2 = AxisRule(-8.0, 8.0, 80);
    const auto res = integrate_2d(grid, [](double w, double wt) {
        return std::complex<double>(std::exp(-w * w - wt * wt) * std::cos(5.0 * (w - wt)), 0.0);
    });
    CHECK(res.value.real() == doctest::Approx(1.1707626227879451e-05).epsilon(1e-10));
    CHECK(std::abs(res.value.imag()) < 1e-18);
    // The half-resolution pass underresolves cos(5(w - wt)) and reports its
    // own ~1e-5 deficit, so the estimate is a loose upper bound on the true
    // error of the full rule, not a measure of it.
    CHECK(res.error_estimate >= std::abs(res.value.real() - 1.1707626227879451e-05));
    CHECK(res.error_estimate < 1e-4);
}

TEST_CASE("tensor quadrature separable product matches 1d rules") {
    QuadratureGrid grid;
    grid.axis1 = AxisRule(0.0, 2.0, 16);
    grid.axis2 = AxisRule(-1.0, 1.0, 16);
    const auto res = integrate_2d(grid, [](double x, double y) {
        return std::complex<double>(std::exp(-x) * (y * y), 0.0);
    });
    const double expected = (1.0 - std::exp(-2.0)) * (2.0 / 3.0);
    CHECK(res.value.real() == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("non-finite integrand raises a located quadrature error") {
    QuadratureGrid grid;
    grid.axis1 = AxisRule(0.0, 1.0, 4);
    grid.axis2 = AxisRule(0.0, 1.0, 4);
    CHECK_THROWS_AS(integrate_2d(grid,
                                 [](double x, double y) {
                                     return std::complex<double>(1.0 / (x - x), y);
                                 }),
                    QuadratureError);
    try {
        integrate_2d(grid, [](double, double) {
            return std::complex<double>(std::nan(""), 0.0);
        });
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::string(e.what()).find("node") != std::string::npos);
    }
}

TEST_CASE("auto grid covers the spectral box with the oscillation-driven count") {
    const auto spec = JointSpectrum::symmetric_gaussian(10.0, 1.0);

    const QuadratureGrid at_rest = auto_grid(spec, 0.0);
    CHECK(at_rest.axis1.lo == doctest::Approx(2.0));
    CHECK(at_rest.axis1.hi == doctest::Approx(18.0));
    CHECK(at_rest.axis2.lo == doctest::Approx(2.0));
    CHECK(at_rest.axis2.hi == doctest::Approx(18.0));
    // Feature resolution alone: 4 nodes per unit width on a 16-wide box = 64.
    CHECK(at_rest.axis1.n == 64);
    CHECK(at_rest.axis2.n == at_rest.axis1.n);

    const QuadratureGrid scanned = auto_grid(spec, 5.0);
    // Phase exp(i (w - wt) d) completes |box| * d / (2 pi) cycles across the
    // box; 8 nodes per cycle needs at least 102 here.
    CHECK(scanned.axis1.n >= 102);
    CHECK(scanned.axis1.n == scanned.axis2.n);
}

TEST_CASE("auto grid grows under tighter tolerance and respects the cap") {
    const auto spec = JointSpectrum::symmetric_gaussian(10.0, 1.0);
    const int base = auto_grid(spec, 5.0, 1e-8).axis1.n;
    const int tight = auto_grid(spec, 5.0, 1e-10).axis1.n;
    CHECK(tight > base);

    // Default regularization of the down-conversion line is sigma/100: the
    // feature term alone wants thousands of nodes, the cap holds at 8192.
    const auto spdc = JointSpectrum::regularized_spdc(20.0, 1.0);
    const QuadratureGrid g = auto_grid(spdc, 0.0, 1e-10);
    CHECK(g.axis1.n == 8192);
}

TEST_CASE("auto grid rejects invalid scan bounds") {
    const auto spec = JointSpectrum::symmetric_gaussian(10.0, 1.0);
    CHECK_THROWS_AS(auto_grid(spec, -1.0), PreconditionError);
    CHECK_THROWS_AS(auto_grid(spec, std::nan("")), PreconditionError);
}
