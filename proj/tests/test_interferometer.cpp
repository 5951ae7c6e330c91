#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "homsim/errors.hpp"
#include "homsim/interferometer.hpp"

using namespace homsim;

TEST_CASE("retarded times follow the four path lengths") {
    Geometry g{1.0, 2.5, 0.5, 0.75};
    g.validate();
    CHECK(g.path_difference() == doctest::Approx(1.5));

    const auto dc = delays(g, 10.0, 20.0);
    CHECK(dc.tau1 == doctest::Approx(10.0 - (1.0 + 0.5)));
    CHECK(dc.tau1p == doctest::Approx(10.0 - (2.5 + 0.5)));
    CHECK(dc.tau2 == doctest::Approx(20.0 - (2.5 + 0.75)));
    CHECK(dc.tau2p == doctest::Approx(20.0 - (1.0 + 0.75)));
}

TEST_CASE("primed and unprimed delays differ by the path difference") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> len(0.0, 5.0);
    std::uniform_real_distribution<double> t(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const Geometry g{len(rng), len(rng), len(rng), len(rng)};
        const auto dc = delays(g, t(rng), t(rng));
        const double d = g.path_difference();
        CHECK(dc.tau1 - dc.tau1p == doctest::Approx(d).epsilon(1e-12));
        CHECK(dc.tau2p - dc.tau2 == doctest::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("geometry builder realizes both signs of the scan variable") {
    const Geometry fwd = geometry_for_path_difference(2.0);
    CHECK(fwd.path_difference() == doctest::Approx(2.0));
    fwd.validate();
    const Geometry back = geometry_for_path_difference(-2.0);
    CHECK(back.path_difference() == doctest::Approx(-2.0));
    back.validate();
    const Geometry with_arms = geometry_for_path_difference(0.5, 1.0, 2.0);
    CHECK(with_arms.s2 == doctest::Approx(1.0));
    CHECK(with_arms.l2 == doctest::Approx(2.0));
}

TEST_CASE("negative arm lengths are rejected") {
    Geometry g{-1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(g.validate(), PreconditionError);
}

TEST_CASE("beam splitter enforces lossless intensity split") {
    CHECK_THROWS_AS(BeamSplitter(0.3, 0.6), InvalidBeamSplitterError);
    CHECK_THROWS_AS(BeamSplitter(-0.1, 1.1), InvalidBeamSplitterError);
    CHECK_THROWS_AS(BeamSplitter(1.2, -0.2), InvalidBeamSplitterError);
    const BeamSplitter ok(0.3, 0.7);
    CHECK(ok.reflectivity() == doctest::Approx(0.3));
    CHECK_FALSE(ok.is_balanced());
    CHECK(BeamSplitter::balanced().is_balanced());
}

TEST_CASE("mixing coefficients form a unitary pair of ports") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> refl(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double r = refl(rng);
        const BeamSplitter bs(r, 1.0 - r);
        const auto m = mix_amplitudes(bs);
        CHECK(m.port1_a == std::complex<double>(0.0, std::sqrt(r)));
        CHECK(m.port1_b == std::complex<double>(std::sqrt(1.0 - r), 0.0));
        CHECK(m.port2_a == std::complex<double>(std::sqrt(1.0 - r), 0.0));
        CHECK(m.port2_b == std::complex<double>(0.0, std::sqrt(r)));
        // Row norms are 1 and the rows are orthogonal: photons are conserved.
        CHECK(std::norm(m.port1_a) + std::norm(m.port1_b) == doctest::Approx(1.0));
        CHECK(std::norm(m.port2_a) + std::norm(m.port2_b) == doctest::Approx(1.0));
        const auto dot = std::conj(m.port1_a) * m.port2_a + std::conj(m.port1_b) * m.port2_b;
        CHECK(std::abs(dot) < 1e-15);
    }
}
