#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mcoal/rng.hpp"

namespace mcoal {

/// Components of a finite measure on [0,1]. Keeping an explicit component
/// algebra (rather than opaque density callbacks) lets the coalescent rate
/// integrals be evaluated in closed form for every family used in practice,
/// with quadrature only as a fallback.
struct DiracAtZero {
    double weight;
};
struct Dirac {
    double location;  // in (0,1]
    double weight;
};
struct BetaDensity {
    double a;  // > 0
    double b;  // > 0
    double weight;  // total mass (density is normalized Beta(a,b))
};
struct UniformDensity {
    double weight;
};
/// Piecewise-constant density h_i on [x_i, x_{i+1}), optionally divided by
/// x^power (power in {0,1,2}; nonzero power arises from the nu-transform).
struct PiecewiseConstantDensity {
    std::vector<double> breakpoints;  // strictly increasing, within [0,1]
    std::vector<double> heights;      // size = breakpoints.size() - 1
    int power = 0;
};

using MeasureComponent =
    std::variant<DiracAtZero, Dirac, BetaDensity, UniformDensity, PiecewiseConstantDensity>;

/// Finite measure on [0,1] as a tagged sum of components. A measure produced
/// by the nu-transform may carry an infinite-mass flag; consumers that need
/// finite intensity must reject flagged measures.
class BoundedMeasure {
public:
    BoundedMeasure() = default;
    explicit BoundedMeasure(std::vector<MeasureComponent> components);

    static BoundedMeasure zero() { return BoundedMeasure(); }
    static BoundedMeasure dirac_at_zero(double w) { return BoundedMeasure({DiracAtZero{w}}); }
    static BoundedMeasure dirac(double x, double w) { return BoundedMeasure({Dirac{x, w}}); }
    static BoundedMeasure beta(double a, double b, double w) {
        return BoundedMeasure({BetaDensity{a, b, w}});
    }
    static BoundedMeasure uniform(double w) { return BoundedMeasure({UniformDensity{w}}); }

    /// Parse the measure spec grammar: `dirac0:w`, `dirac:x:w`, `beta:a:b:w`,
    /// `uniform:w`, `pwc:x0,h0,x1,h1,...,xn`, components joined by `+`.
    static BoundedMeasure parse(const std::string& spec);
    std::string to_string() const;

    const std::vector<MeasureComponent>& components() const { return components_; }
    bool empty() const { return components_.empty(); }

    double total_mass() const;
    double mass_at_zero() const;
    double mass_at_one() const;

    bool infinite_mass() const { return infinite_mass_; }
    void flag_infinite_mass() { infinite_mass_ = true; }

    /// Draw a location from the normalized measure.
    double sample(RandomSource& rng) const;

    /// Integral of f against the measure; atoms evaluated pointwise (with
    /// f(0) taken as given), densities by adaptive quadrature.
    double integrate_against(const std::function<double(double)>& f, double abs_tol = 1e-10) const;

private:
    std::vector<MeasureComponent> components_;
    bool infinite_mass_ = false;
};

/// The pair M = (Lambda_0, Lambda_1) characterizing an M-coalescent.
struct MParams {
    BoundedMeasure lambda0;
    BoundedMeasure lambda1;
    double c0() const { return lambda0.mass_at_zero(); }
    double c1() const { return lambda1.mass_at_zero(); }
};

/// lambda_{b,k} = int x^{k-2} (1-x)^{b-k} Lambda_1(dx), 2 <= k <= b.
/// At x = 0 the integrand is 1 iff k == 2 (0^0 = 1 convention).
double lambda_rate(int b, int k, const BoundedMeasure& lambda1);

/// r_{b,k} = int y^{k-1} (1-y)^{b-k} Lambda_0(dy), 1 <= k <= b.
/// At y = 0 the integrand is 1 iff k == 1.
double r_rate(int b, int k, const BoundedMeasure& lambda0);

/// nu-transform: density x^{-power} applied component-wise; power must be 1
/// (Lambda_0 -> nu_0) or 2 (Lambda_1 -> nu_1). Requires no atom at 0.
/// A divergent result is returned with the infinite-mass flag set.
BoundedMeasure nu_measure(const BoundedMeasure& lambda, int power);

}  // namespace mcoal
