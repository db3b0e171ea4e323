#pragma once

#include <string>
#include <vector>

#include "mcoal/measure.hpp"
#include "mcoal/paintbox.hpp"

namespace mcoal {

enum class CdiClass { ComesDown, DoesNotComeDown, Undecided };

std::string to_string(CdiClass v);

/// Classification outcome with the numerical evidence behind it. The series
/// criterion is not machine-decidable, so the verdict is a documented
/// heuristic and carries everything needed for an audit.
struct CdiVerdict {
    CdiClass verdict = CdiClass::Undecided;
    bool mass_at_one = false;
    double partial_sum = 0.0;   // S_N = sum_{n=2}^N 1 / phi1(n)
    double psi_integral = 0.0;  // int_1^Q dq / psi(q)
    int series_depth = 0;       // N
    double integral_cap = 0.0;  // Q
    std::vector<double> window_increments;  // psi-integral over [2^j, 2^(j+1)]
    std::string note;
};

/// phi1(n) = sum_{k=2}^n (k-1) C(n,k) lambda_{n,k}. Exact, O(n) per call via
/// per-component term recurrences (quadrature only for piecewise densities).
double phi1(int n, const BoundedMeasure& lambda1);

/// phi(n) = phi1(n) + Lambda_0([0,1]) * n; phi(1) = Lambda_0([0,1]).
double phi(int n, const MParams& m);

/// psi(q) = int (e^{-qx} - 1 + qx) x^{-2} Lambda(dx); the atom at 0
/// contributes w q^2 / 2 (Taylor limit of the integrand).
double psi(double q, const BoundedMeasure& lambda1);

struct CdiOptions {
    int series_depth = 10000;       // N
    double integral_cap = 1000000;  // Q
    int windows = 20;
    double ratio_threshold = 0.99;  // geometric-decay acceptance
    double increment_floor = 0.01;  // "bounded below" detection
};

/// Coming-down-from-infinity verdict for M = (Lambda_0, Lambda_1).
/// Mass at 1 forces ComesDown outright; otherwise the criterion depends on
/// Lambda_1 only: the tail of int dq/psi(q) is probed over geometric windows
/// [2^j, 2^(j+1)]. Increments bounded away from zero over the last windows
/// mean a divergent integral (DoesNotComeDown); increments decaying at a
/// geometric rate mean convergence (ComesDown); anything else is Undecided.
CdiVerdict classify_cdi(const MParams& m, const CdiOptions& opts = {});

/// Upper bound on the expected fixation time: sum_{n=1}^N 1/phi(n) plus a
/// tail term; the tail is only certified when the phi1 part makes it
/// summable.
struct FixationBound {
    double partial_sum = 0.0;
    double tail_estimate = 0.0;
    bool tail_controlled = false;
    double bound() const { return partial_sum + tail_estimate; }
};
FixationBound fixation_bound(const MParams& m, int depth = 10000);

/// Laplace exponent of -ln(dust): phi0(q) = c0 q + sum_i w_i (1 - delta_i^q)
/// for the finite mixture nu0 = sum_i w_i delta_{s_i}.
double dust_laplace_exponent(double q, double c0,
                             const std::vector<std::pair<DistinguishedMassPartition, double>>& mixture);

}  // namespace mcoal
