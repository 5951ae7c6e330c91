#pragma once

#include <complex>

namespace homsim {

// Arm lengths of the delay interferometer, all nonnegative: s1/l1 are the
// short and long paths feeding the splitter, s2/l2 the detector-side runs.
// Units use c = 1, so lengths and delays share the frequency-inverse unit.
struct Geometry {
    double s1 = 0.0;
    double l1 = 0.0;
    double s2 = 0.0;
    double l2 = 0.0;

    double path_difference() const { return l1 - s1; }  // the scan variable D
    void validate() const;                              // PreconditionError on negative arm
};

// Geometry with l1 - s1 = d and the smaller of the pair at zero.
Geometry geometry_for_path_difference(double d, double s2 = 0.0, double l2 = 0.0);

// Retarded times seen by the two detectors for laboratory times t1, t2.
// tau1/tau2 ride the like-labeled paths, the primed pair the exchanged ones;
// tau1 - tau1p == tau2p - tau2 == path_difference for every geometry.
struct DelayCoordinates {
    double tau1 = 0.0;
    double tau1p = 0.0;
    double tau2 = 0.0;
    double tau2p = 0.0;
};

DelayCoordinates delays(const Geometry& g, double t1, double t2);

class BeamSplitter {
public:
    // Intensity coefficients; requires R, T in [0,1] with R + T = 1 to 1e-12,
    // otherwise InvalidBeamSplitterError.
    BeamSplitter(double reflectivity, double transmissivity);
    static BeamSplitter balanced() { return BeamSplitter(0.5, 0.5); }

    double reflectivity() const { return r_; }
    double transmissivity() const { return t_; }
    bool is_balanced(double tol = 1e-12) const;

private:
    double r_ = 0.5;
    double t_ = 0.5;
};

// Output-port amplitude coefficients. Port 1 sees i*sqrt(R) of input a and
// sqrt(T) of input b; port 2 the transpose. Rows are orthonormal, so the
// mixing is unitary for every admissible splitter.
struct MixingCoefficients {
    std::complex<double> port1_a, port1_b;
    std::complex<double> port2_a, port2_b;
};

MixingCoefficients mix_amplitudes(const BeamSplitter& bs);

}  // namespace homsim
