#include "homsim/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace homsim {

namespace {

// Legendre nodes on [-1,1] by Newton iteration from the Chebyshev guess.
// Symmetric pairs are filled together, so node i and n-1-i are exact mirrors.
void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = -z;
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
        w[static_cast<std::size_t>(i)] = wi;
        w[static_cast<std::size_t>(n - 1 - i)] = wi;
    }
}

}  // namespace

AxisRule::AxisRule(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
        throw PreconditionError("quadrature axis requires finite lo < hi");
    }
    if (n < 2) throw PreconditionError("quadrature axis requires at least 2 nodes");
    std::vector<double> xu, wu;
    gauss_legendre_unit(n, xu, wu);
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < xu.size(); ++i) {
        nodes[i] = mid + half * xu[i];
        weights[i] = half * wu[i];
    }
}

std::complex<double> pairwise_sum(std::vector<std::complex<double>>& buf) {
    std::size_t count = buf.size();
    if (count == 0) return {0.0, 0.0};
    while (count > 1) {
        const std::size_t half = count / 2;
        for (std::size_t i = 0; i < half; ++i) {
            buf[i] += buf[count - 1 - i];
        }
        count -= half;
    }
    return buf[0];
}

QuadratureGrid auto_grid(const JointSpectrum& spec, double d_max, double tol) {
    if (!(d_max >= 0.0) || !std::isfinite(d_max)) {
        throw PreconditionError("auto_grid requires finite d_max >= 0");
    }
    if (!(tol > 0.0)) throw PreconditionError("auto_grid requires tol > 0");

    const auto box = spec.support();
    // Evaluating both F(w,wt) and F(wt,w) on one tensor grid needs the same
    // bounds on both axes for parametric families; tabulated grids keep their
    // own (possibly distinct) declared bounds.
    double lo1 = box[0], hi1 = box[1], lo2 = box[2], hi2 = box[3];
    if (spec.kind() != SpectrumKind::Tabulated) {
        lo1 = lo2 = std::min(box[0], box[2]);
        hi1 = hi2 = std::max(box[1], box[3]);
    }

    const double phase = d_max + spec.phase_shift_scale();
    const auto size_axis = [&](double lo, double hi) {
        const double width = hi - lo;
        // >= 8 nodes per period of exp(i w * phase) across the axis.
        const double oscillation = 8.0 * width * phase / (2.0 * M_PI);
        // >= 4 nodes per narrowest feature width.
        const double feature = 4.0 * width / spec.min_feature_width();
        int n = std::max<int>(64, static_cast<int>(std::ceil(std::max(oscillation, feature))));
        if (tol < 1e-8) {
            // Monotone refinement: tightening the tolerance never removes nodes.
            const double boost = 1.0 + 0.25 * std::log10(1e-8 / tol);
            n = static_cast<int>(std::ceil(n * boost));
        }
        return std::min(n, 8192);
    };

    QuadratureGrid grid;
    grid.axis1 = AxisRule(lo1, hi1, size_axis(lo1, hi1));
    grid.axis2 = AxisRule(lo2, hi2, size_axis(lo2, hi2));
    grid.tolerance = tol;
    return grid;
}

}  // namespace homsim
