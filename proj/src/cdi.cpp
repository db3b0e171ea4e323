#include "mcoal/cdi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcoal/quadrature.hpp"

namespace mcoal {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// (e^{-qx} - 1 + qx) / x^2, series below qx = 1e-4 to dodge cancellation.
double psi_integrand(double q, double x) {
    double u = q * x;
    if (u < 1e-4)
        return q * q * (0.5 - u / 6.0 + u * u / 24.0 - u * u * u / 120.0);
    return (std::expm1(-u) + u) / (x * x);
}

// phi1 contribution of one component, term recurrence over k.
double phi1_component(int n, const MeasureComponent& c) {
    if (const auto* d0 = std::get_if<DiracAtZero>(&c)) {
        // only k = 2 survives the atom at zero
        return d0->weight * 0.5 * n * (n - 1.0);
    }
    if (const auto* d = std::get_if<Dirac>(&c)) {
        double x = d->location, w = d->weight;
        if (x == 1.0) return w * (n - 1.0);  // only k = n
        double t = 0.5 * n * (n - 1.0) * std::pow(1.0 - x, n - 2) * w;  // k = 2 term
        double sum = t;
        double ratio_x = x / (1.0 - x);
        for (int k = 2; k < n; ++k) {
            t *= (static_cast<double>(k) / (k - 1.0)) * (static_cast<double>(n - k) / (k + 1.0)) *
                 ratio_x;
            sum += t;
        }
        return sum;
    }
    if (const auto* be = std::get_if<BetaDensity>(&c)) {
        double a = be->a, b = be->b, w = be->weight;
        double t = 0.5 * n * (n - 1.0) * w * std::exp(log_beta(a, b + n - 2) - log_beta(a, b));
        double sum = t;
        for (int k = 2; k < n; ++k) {
            t *= (static_cast<double>(k) / (k - 1.0)) * (static_cast<double>(n - k) / (k + 1.0)) *
                 ((a + k - 2.0) / (b + n - k - 1.0));
            sum += t;
        }
        return sum;
    }
    if (const auto* u = std::get_if<UniformDensity>(&c)) {
        // (k-1) C(n,k) B(k-1, n-k+1) = n/k, so phi1 = w n (H_n - 1)
        double h = 0.0;
        for (int k = 2; k <= n; ++k) h += 1.0 / k;
        return u->weight * n * h;
    }
    // piecewise: no closed form, fall back to the rate integrals
    BoundedMeasure single({c});
    double sum = 0.0;
    double logC = std::log(0.5 * n * (n - 1.0));  // C(n,2)
    for (int k = 2; k <= n; ++k) {
        sum += (k - 1.0) * std::exp(logC) * lambda_rate(n, k, single);
        logC += std::log(static_cast<double>(n - k) / (k + 1.0));
    }
    return sum;
}

}  // namespace

std::string to_string(CdiClass v) {
    switch (v) {
        case CdiClass::ComesDown: return "ComesDown";
        case CdiClass::DoesNotComeDown: return "DoesNotComeDown";
        default: return "Undecided";
    }
}

double phi1(int n, const BoundedMeasure& lambda1) {
    if (n < 2) return 0.0;
    double total = 0.0;
    for (const auto& c : lambda1.components()) total += phi1_component(n, c);
    return total;
}

double phi(int n, const MParams& m) {
    if (n < 1) throw std::invalid_argument("phi: n must be >= 1");
    return phi1(n, m.lambda1) + m.lambda0.total_mass() * n;
}

double psi(double q, const BoundedMeasure& lambda1) {
    if (!(q > 0.0)) throw std::invalid_argument("psi: q must be positive");
    double total = 0.0;
    double tol = std::max(1e-10, 1e-13 * q * q);
    for (const auto& c : lambda1.components()) {
        if (const auto* d0 = std::get_if<DiracAtZero>(&c)) {
            total += d0->weight * 0.5 * q * q;
        } else if (const auto* d = std::get_if<Dirac>(&c)) {
            total += d->weight * psi_integrand(q, d->location);
        } else {
            BoundedMeasure single({c});
            total += single.integrate_against([q](double x) { return psi_integrand(q, x); }, tol);
        }
    }
    return total;
}

CdiVerdict classify_cdi(const MParams& m, const CdiOptions& opts) {
    CdiVerdict v;
    v.series_depth = opts.series_depth;
    v.integral_cap = opts.integral_cap;

    if (m.lambda0.mass_at_one() + m.lambda1.mass_at_one() > 0.0) {
        v.mass_at_one = true;
        v.verdict = CdiClass::ComesDown;
        v.note = "mass at 1: one Poisson atom collapses everything";
        return v;
    }
    if (m.lambda1.total_mass() == 0.0) {
        v.verdict = CdiClass::DoesNotComeDown;
        v.note = "Lambda_1 = 0: no merging among non-distinguished blocks; "
                 "criterion rests on Lambda_1 only";
        return v;
    }

    for (int n = 2; n <= opts.series_depth; ++n) {
        double p = phi1(n, m.lambda1);
        if (!(p > 0.0)) throw std::runtime_error("classify_cdi: phi1 vanished for nonzero Lambda_1");
        v.partial_sum += 1.0 / p;
    }

    int windows = opts.windows;
    while (windows > 1 && std::pow(2.0, windows) > opts.integral_cap) --windows;
    const auto& l1 = m.lambda1;
    for (int j = 0; j < windows; ++j) {
        double lo = std::pow(2.0, j), hi = std::pow(2.0, j + 1);
        auto f = [&l1](double q) { return 1.0 / psi(q, l1); };
        double inc = integrate(f, lo, hi, 1e-9 * hi, 200000).value;
        v.window_increments.push_back(inc);
        v.psi_integral += inc;
    }

    const int look = std::min<int>(5, windows);
    double min_inc = 1e300, max_ratio = 0.0, last_inc = v.window_increments.back();
    for (int j = windows - look; j < windows; ++j)
        min_inc = std::min(min_inc, v.window_increments[j]);
    for (int j = windows - look; j < windows - 1; ++j) {
        double a = v.window_increments[j], b = v.window_increments[j + 1];
        max_ratio = std::max(max_ratio, a > 0.0 ? b / a : 1.0);
    }

    if (min_inc >= opts.increment_floor) {
        v.verdict = CdiClass::DoesNotComeDown;
        v.note = "psi-integral increments bounded below over the last windows";
    } else if (last_inc < 1e-14 || max_ratio <= opts.ratio_threshold) {
        v.verdict = CdiClass::ComesDown;
        v.note = "psi-integral increments decay geometrically";
    } else {
        v.verdict = CdiClass::Undecided;
        v.note = "window increments neither bounded below nor geometrically decaying";
    }
    return v;
}

FixationBound fixation_bound(const MParams& m, int depth) {
    if (!(m.lambda0.total_mass() > 0.0))
        throw std::invalid_argument("fixation_bound: Lambda_0 must be nonzero (phi(1) = 0 otherwise)");
    FixationBound out;
    for (int n = 1; n <= depth; ++n) out.partial_sum += 1.0 / phi(n, m);
    double c1 = m.lambda1.mass_at_zero();
    if (c1 > 0.0 && depth >= 2) {
        // phi(n) >= phi1(n) >= c1 n(n-1)/2, so the tail telescopes
        out.tail_estimate = 2.0 / (c1 * depth);
        out.tail_controlled = true;
    }
    return out;
}

double dust_laplace_exponent(
    double q, double c0,
    const std::vector<std::pair<DistinguishedMassPartition, double>>& mixture) {
    if (!(q > 0.0)) throw std::invalid_argument("dust_laplace_exponent: q must be positive");
    double total = c0 * q;
    for (const auto& [s, w] : mixture) {
        if (!(w >= 0.0)) throw std::invalid_argument("dust_laplace_exponent: negative weight");
        total += w * (1.0 - std::pow(s.dust(), q));
    }
    return total;
}

}  // namespace mcoal
