#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "homsim/errors.hpp"
#include "homsim/spectra.hpp"

namespace homsim {

// Gauss-Legendre nodes and weights on [lo, hi]; n >= 2. Construction is
// deterministic (Newton iteration from the Chebyshev initial guess).
struct AxisRule {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    AxisRule() = default;
    AxisRule(double lo, double hi, int n);
};

struct QuadratureGrid {
    AxisRule axis1;
    AxisRule axis2;
    double tolerance = 1e-8;
};

struct IntegrationResult {
    std::complex<double> value;
    double error_estimate = 0.0;  // |full rule - half-resolution rule|
};

// Fixed-order pairwise reduction; the summation tree depends only on size(),
// never on evaluation scheduling, so results are reproducible bit for bit.
std::complex<double> pairwise_sum(std::vector<std::complex<double>>& buf);

namespace detail {

template <class F>
std::complex<double> tensor_apply(const AxisRule& ax, const AxisRule& ay, F&& f) {
    std::vector<std::complex<double>> rows(static_cast<std::size_t>(ax.n));
    std::vector<std::complex<double>> row(static_cast<std::size_t>(ay.n));
    for (int j = 0; j < ax.n; ++j) {
        const double x = ax.nodes[static_cast<std::size_t>(j)];
        for (int k = 0; k < ay.n; ++k) {
            const double y = ay.nodes[static_cast<std::size_t>(k)];
            const std::complex<double> v = f(x, y);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw QuadratureError("non-finite integrand at node (" +
                                      std::to_string(x) + ", " + std::to_string(y) + ")");
            }
            row[static_cast<std::size_t>(k)] = ay.weights[static_cast<std::size_t>(k)] * v;
        }
        rows[static_cast<std::size_t>(j)] =
            ax.weights[static_cast<std::size_t>(j)] * pairwise_sum(row);
    }
    return pairwise_sum(rows);
}

}  // namespace detail

// Tensor-product Gauss-Legendre integral of f over the grid box. The error
// estimate compares against the rule with half the nodes per axis; for smooth
// integrands it is pessimistic by design. The integrand must be pure: it may
// be invoked in any order and, in principle, concurrently.
template <class F>
IntegrationResult integrate_2d(const QuadratureGrid& grid, F&& f) {
    IntegrationResult res;
    res.value = detail::tensor_apply(grid.axis1, grid.axis2, f);
    const AxisRule hx(grid.axis1.lo, grid.axis1.hi, std::max(2, grid.axis1.n / 2));
    const AxisRule hy(grid.axis2.lo, grid.axis2.hi, std::max(2, grid.axis2.n / 2));
    const std::complex<double> half = detail::tensor_apply(hx, hy, f);
    res.error_estimate = std::abs(res.value - half);
    return res;
}

// Grid sized for the spectrum's truncation box and the worst interference
// phase exp(i (w - wt) d) with |d| <= d_max: at least 8 nodes per oscillation
// period, at least 4 nodes per narrowest spectral feature, floor of 64 per
// axis. Tightening tol below the 1e-8 default only ever adds nodes.
QuadratureGrid auto_grid(const JointSpectrum& spec, double d_max, double tol = 1e-8);

}  // namespace homsim
