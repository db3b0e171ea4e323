#pragma once

#include <map>
#include <vector>

#include "mcoal/measure.hpp"
#include "mcoal/partition.hpp"
#include "mcoal/rng.hpp"

namespace mcoal {

/// b(r) = y + x 1{v <= r} + r (1 - x - y): non-decreasing, b(0-) = 0,
/// b(1) = 1, with a jump of size y at 0 and x at v.
struct DistinguishedBridge {
    double y = 0.0;  // jump at 0
    double x = 0.0;  // interior jump size, x + y <= 1
    double v = 0.0;  // interior jump location

    double eval(double r) const;
    /// Right-continuous generalized inverse inf{r : b(r) > u}; plateau hits
    /// return the exact doubles 0.0 or v, so coagulation classes downstream
    /// are exact equality groups rather than float coincidences.
    double inverse(double u) const;
};

DistinguishedBridge validate_bridge(double y, double x, double v);

/// B = factors[0] o factors[1] o ... (time order: factors[0] is the earliest
/// atom and the outermost map). Forward evaluation applies the last factor
/// first; the inverse applies factors[0]'s inverse first.
struct CompositeBridge {
    std::vector<DistinguishedBridge> factors;

    double eval(double r) const;
    double inverse(double u) const;
};

/// U_0 = 0, U_1..U_n i.i.d. uniform; i ~ j iff B^{-1}(U_i) = B^{-1}(U_j)
/// (exact plateau grouping via the snapped inverses).
DistinguishedPartition partition_from_bridge(const CompositeBridge& bridge, int n,
                                             RandomSource& rng);

/// Monte-Carlo check of the composition/coagulation identity: the law of the
/// partition of b1 o b2 versus the law of Coag(pi from b1, pi' from b2 driven
/// by the surviving inverse values).
struct ComposeCheckResult {
    std::map<DistinguishedPartition, double> law_composite;
    std::map<DistinguishedPartition, double> law_coag;
    double tv_distance = 0.0;
};
ComposeCheckResult compose_check(const DistinguishedBridge& b1, const DistinguishedBridge& b2,
                                 int n, int replicas, RandomSource& rng);

/// Poissonian bridge flow over [0, t]: atoms at rate (nu0 + nu1)([0,1]);
/// a nu0-atom contributes b_{y,0}, a nu1-atom b_{0,x} with a fresh uniform v.
CompositeBridge simulate_flow(const BoundedMeasure& nu0, const BoundedMeasure& nu1, double t,
                              RandomSource& rng);

}  // namespace mcoal
