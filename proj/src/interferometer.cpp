#include "homsim/interferometer.hpp"

#include <cmath>

#include "homsim/errors.hpp"

namespace homsim {

void Geometry::validate() const {
    if (!(s1 >= 0.0 && l1 >= 0.0 && s2 >= 0.0 && l2 >= 0.0)) {
        throw PreconditionError("geometry arm lengths must be nonnegative");
    }
}

Geometry geometry_for_path_difference(double d, double s2, double l2) {
    Geometry g;
    g.s1 = d < 0.0 ? -d : 0.0;
    g.l1 = d > 0.0 ? d : 0.0;
    g.s2 = s2;
    g.l2 = l2;
    g.validate();
    return g;
}

DelayCoordinates delays(const Geometry& g, double t1, double t2) {
    g.validate();
    DelayCoordinates tau;
    tau.tau1 = t1 - (g.s1 + g.s2);
    tau.tau2 = t2 - (g.l1 + g.l2);
    tau.tau1p = t1 - (g.l1 + g.s2);
    tau.tau2p = t2 - (g.s1 + g.l2);
    return tau;
}

BeamSplitter::BeamSplitter(double reflectivity, double transmissivity)
    : r_(reflectivity), t_(transmissivity) {
    if (!(r_ >= 0.0 && r_ <= 1.0 && t_ >= 0.0 && t_ <= 1.0)) {
        throw InvalidBeamSplitterError("beam splitter coefficients must lie in [0, 1]");
    }
    if (std::abs(r_ + t_ - 1.0) > 1e-12) {
        throw InvalidBeamSplitterError("beam splitter must be lossless: R + T = 1 within 1e-12");
    }
}

bool BeamSplitter::is_balanced(double tol) const { return std::abs(r_ - t_) <= tol; }

MixingCoefficients mix_amplitudes(const BeamSplitter& bs) {
    const double sr = std::sqrt(bs.reflectivity());
    const double st = std::sqrt(bs.transmissivity());
    MixingCoefficients m;
    m.port1_a = {0.0, sr};
    m.port1_b = {st, 0.0};
    m.port2_a = {st, 0.0};
    m.port2_b = {0.0, sr};
    return m;
}

}  // namespace homsim
