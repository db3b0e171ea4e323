#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mcoal {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t subdivisions = 0;
};

/// Thrown when the subdivision cap is hit before the tolerance is met.
/// Silent inaccuracy is never an acceptable outcome for rate integrals.
struct QuadratureCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Globally adaptive Gauss-Kronrod 15(7) on [a,b] with an absolute
/// tolerance. Worst-interval-first refinement, so endpoint singularities
/// like x^{-1/2} converge without wasting splits on smooth regions.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10, std::size_t max_subdivisions = 1000000);

/// Gauss-Legendre nodes/weights on [0,1], Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(std::size_t n);

}  // namespace mcoal
