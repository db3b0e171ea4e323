#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mcoal/measure.hpp"
#include "mcoal/partition.hpp"
#include "mcoal/rng.hpp"

namespace mcoal {

/// GFVI state: probability measure on [0,1] of the form
/// w0 delta_0 + sum_i w_i delta_{a_i} + lebesgue * Uniform[0,1].
struct AtomicProbabilityMeasure {
    double w0 = 0.0;
    std::vector<std::pair<double, double>> atoms;  // (location in (0,1), weight)
    double lebesgue = 0.0;

    static AtomicProbabilityMeasure uniform() { return {0.0, {}, 1.0}; }
    static AtomicProbabilityMeasure delta_zero() { return {1.0, {}, 0.0}; }

    double total_mass() const;
    /// First moment: sum w_i a_i + lebesgue / 2.
    double mean() const;
    void validate() const;
    /// Drop atoms below 1e-15 (mass folded into the Lebesgue part) so long
    /// trajectories keep a bounded atom list without breaking the mass
    /// invariant.
    void compact();
};

/// One jump. Reproduction at size x: Z -> (1 - x) Z + x delta_parent, the
/// parent drawn from Z (a Lebesgue draw creates a fresh atom). Immigration at
/// size y: Z -> (1 - y) Z + y delta_0.
struct GfviEvent {
    enum class Kind { Reproduction, Immigration };
    Kind kind = Kind::Immigration;
    double time = 0.0;
    double size = 0.0;        // x or y
    double parent_loc = 0.0;  // reproduction only
    bool parent_at_zero = false;
};

AtomicProbabilityMeasure gfvi_step(const AtomicProbabilityMeasure& z, const GfviEvent& event);

/// Draw a parent location from z; a Lebesgue draw returns a fresh uniform
/// location (flagged fresh so the caller knows an atom must be created).
struct ParentDraw {
    double location = 0.0;
    bool at_zero = false;
};
ParentDraw sample_parent(const AtomicProbabilityMeasure& z, RandomSource& rng);

/// Events stored, states replayed on demand (a trajectory with many events
/// would otherwise cost quadratic memory in the atom count).
struct GfviTrajectory {
    AtomicProbabilityMeasure initial;
    std::vector<GfviEvent> events;
    AtomicProbabilityMeasure final_state;
    double horizon = 0.0;

    AtomicProbabilityMeasure state_at(double t) const;
};

GfviTrajectory simulate_gfvi(const BoundedMeasure& nu0, const BoundedMeasure& nu1,
                             const AtomicProbabilityMeasure& z0, double t, RandomSource& rng);

/// Symmetric function on [0,1]^p as a callable; p <= 4 everywhere below.
using MomentFunction = std::function<double(const std::vector<double>&)>;

/// G_f(rho) = <f, rho^{tensor p}>; discrete parts exact, the Lebesgue part
/// integrated on Gauss-Legendre nodes (exact for polynomial f of the degrees
/// used in the tests).
double moment_functional(const MomentFunction& f, int p, const AtomicProbabilityMeasure& rho);

/// L G_f(rho) = int nu1(dx) int rho(da) [G_f((1-x)rho + x delta_a) - G_f(rho)]
///            + int nu0(dy) [G_f((1-y)rho + y delta_0) - G_f(rho)].
double gfvi_generator_apply(const MomentFunction& f, int p, const AtomicProbabilityMeasure& rho,
                            const BoundedMeasure& nu0, const BoundedMeasure& nu1);

/// Phi_f(m, pi) with x_0 = 0 pinned to the distinguished block and one
/// m-integration variable per other block; m here is an
/// AtomicProbabilityMeasure (Lebesgue for the standard case).
double duality_functional(const MomentFunction& f, int p, const AtomicProbabilityMeasure& m,
                          const DistinguishedPartition& pi);

struct DualityReport {
    double lhs_mean = 0.0, lhs_se = 0.0;
    double rhs_mean = 0.0, rhs_se = 0.0;
    double z_score = 0.0;
    int replicas = 0;
};

/// Monte-Carlo check of E[Phi_f(Z_0, Pi(t))] = E[Phi_f(Z_t, singletons)]
/// with Z_0 = Lebesgue: lhs runs the coalescent on {0,...,p}, rhs the GFVI.
DualityReport duality_check(const MParams& m, int p, const MomentFunction& f, double t,
                            int replicas, std::uint64_t seed);

}  // namespace mcoal
