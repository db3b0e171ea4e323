#include "mcoal/measure.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mcoal/quadrature.hpp"

namespace mcoal {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

void validate(const MeasureComponent& c) {
    if (const auto* d0 = std::get_if<DiracAtZero>(&c)) {
        if (!(d0->weight >= 0.0)) throw std::invalid_argument("measure: negative weight");
    } else if (const auto* d = std::get_if<Dirac>(&c)) {
        if (!(d->weight >= 0.0)) throw std::invalid_argument("measure: negative weight");
        if (!(d->location > 0.0 && d->location <= 1.0))
            throw std::invalid_argument("measure: dirac location must lie in (0,1]");
    } else if (const auto* be = std::get_if<BetaDensity>(&c)) {
        if (!(be->weight >= 0.0)) throw std::invalid_argument("measure: negative weight");
        if (!(be->a > 0.0 && be->b > 0.0))
            throw std::invalid_argument("measure: beta parameters must be positive");
    } else if (const auto* u = std::get_if<UniformDensity>(&c)) {
        if (!(u->weight >= 0.0)) throw std::invalid_argument("measure: negative weight");
    } else if (const auto* p = std::get_if<PiecewiseConstantDensity>(&c)) {
        if (p->breakpoints.size() < 2 || p->heights.size() + 1 != p->breakpoints.size())
            throw std::invalid_argument("measure: malformed piecewise density");
        if (p->breakpoints.front() < 0.0 || p->breakpoints.back() > 1.0)
            throw std::invalid_argument("measure: piecewise breakpoints must lie in [0,1]");
        for (std::size_t i = 0; i + 1 < p->breakpoints.size(); ++i)
            if (!(p->breakpoints[i] < p->breakpoints[i + 1]))
                throw std::invalid_argument("measure: breakpoints must be strictly increasing");
        for (double h : p->heights)
            if (!(h >= 0.0)) throw std::invalid_argument("measure: negative piecewise height");
        if (p->power != 0 && p->power != 1 && p->power != 2)
            throw std::invalid_argument("measure: piecewise power must be 0, 1 or 2");
    }
}

// int_{lo}^{hi} x^{-p} dx, lo > 0 required for p > 0
double cell_mass(double lo, double hi, int p) {
    switch (p) {
        case 0: return hi - lo;
        case 1: return std::log(hi / lo);
        default: return 1.0 / lo - 1.0 / hi;
    }
}

double pwc_mass(const PiecewiseConstantDensity& p) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.heights.size(); ++i) {
        if (p.heights[i] == 0.0) continue;
        double lo = p.breakpoints[i], hi = p.breakpoints[i + 1];
        if (p.power > 0 && lo <= 0.0) return std::numeric_limits<double>::infinity();
        m += p.heights[i] * cell_mass(lo, hi, p.power);
    }
    return m;
}

double component_mass(const MeasureComponent& c) {
    if (const auto* d0 = std::get_if<DiracAtZero>(&c)) return d0->weight;
    if (const auto* d = std::get_if<Dirac>(&c)) return d->weight;
    if (const auto* be = std::get_if<BetaDensity>(&c)) return be->weight;
    if (const auto* u = std::get_if<UniformDensity>(&c)) return u->weight;
    return pwc_mass(std::get<PiecewiseConstantDensity>(c));
}

// int x^p (1-x)^q Lambda(dx) with the 0^0 = 1 convention at the endpoints;
// the common core of lambda_rate and r_rate.
double moment_rate(int p, int q, const BoundedMeasure& m) {
    double total = 0.0;
    for (const auto& c : m.components()) {
        if (const auto* d0 = std::get_if<DiracAtZero>(&c)) {
            if (p == 0) total += d0->weight;
        } else if (const auto* d = std::get_if<Dirac>(&c)) {
            total += d->weight * std::pow(d->location, p) * std::pow(1.0 - d->location, q);
        } else if (const auto* be = std::get_if<BetaDensity>(&c)) {
            total += be->weight * std::exp(log_beta(be->a + p, be->b + q) - log_beta(be->a, be->b));
        } else if (const auto* u = std::get_if<UniformDensity>(&c)) {
            total += u->weight * std::exp(log_beta(p + 1, q + 1));
        } else {
            const auto& pw = std::get<PiecewiseConstantDensity>(c);
            for (std::size_t i = 0; i < pw.heights.size(); ++i) {
                if (pw.heights[i] == 0.0) continue;
                double h = pw.heights[i];
                int pow_shift = pw.power;
                auto f = [p, q, pow_shift](double x) {
                    double v = std::pow(x, p) * std::pow(1.0 - x, q);
                    if (pow_shift) v *= std::pow(x, -pow_shift);
                    return v;
                };
                total += h * integrate(f, pw.breakpoints[i], pw.breakpoints[i + 1]).value;
            }
        }
    }
    return total;
}

}  // namespace

BoundedMeasure::BoundedMeasure(std::vector<MeasureComponent> components)
    : components_(std::move(components)) {
    for (const auto& c : components_) validate(c);
}

double BoundedMeasure::total_mass() const {
    if (infinite_mass_) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (const auto& c : components_) m += component_mass(c);
    return m;
}

double BoundedMeasure::mass_at_zero() const {
    double m = 0.0;
    for (const auto& c : components_)
        if (const auto* d0 = std::get_if<DiracAtZero>(&c)) m += d0->weight;
    return m;
}

double BoundedMeasure::mass_at_one() const {
    double m = 0.0;
    for (const auto& c : components_)
        if (const auto* d = std::get_if<Dirac>(&c))
            if (d->location == 1.0) m += d->weight;
    return m;
}

double BoundedMeasure::sample(RandomSource& rng) const {
    if (infinite_mass_) throw std::invalid_argument("sample: measure has infinite mass");
    std::vector<double> masses;
    masses.reserve(components_.size());
    for (const auto& c : components_) masses.push_back(component_mass(c));
    std::size_t i = rng.categorical(masses);
    const auto& c = components_[i];
    if (std::holds_alternative<DiracAtZero>(c)) return 0.0;
    if (const auto* d = std::get_if<Dirac>(&c)) return d->location;
    if (const auto* be = std::get_if<BetaDensity>(&c)) return rng.beta(be->a, be->b);
    if (std::holds_alternative<UniformDensity>(c)) return rng.uniform();
    const auto& pw = std::get<PiecewiseConstantDensity>(c);
    std::vector<double> cells;
    cells.reserve(pw.heights.size());
    for (std::size_t j = 0; j < pw.heights.size(); ++j)
        cells.push_back(pw.heights[j] * cell_mass(pw.breakpoints[j], pw.breakpoints[j + 1], pw.power));
    std::size_t j = rng.categorical(cells);
    double lo = pw.breakpoints[j], hi = pw.breakpoints[j + 1];
    double u = rng.uniform();
    switch (pw.power) {
        case 0: return lo + u * (hi - lo);
        case 1: return lo * std::pow(hi / lo, u);
        default: return 1.0 / (1.0 / lo - u * (1.0 / lo - 1.0 / hi));
    }
}

double BoundedMeasure::integrate_against(const std::function<double(double)>& f,
                                         double abs_tol) const {
    if (infinite_mass_) throw std::invalid_argument("integrate_against: infinite mass");
    double total = 0.0;
    for (const auto& c : components_) {
        if (const auto* d0 = std::get_if<DiracAtZero>(&c)) {
            total += d0->weight * f(0.0);
        } else if (const auto* d = std::get_if<Dirac>(&c)) {
            total += d->weight * f(d->location);
        } else if (const auto* be = std::get_if<BetaDensity>(&c)) {
            // Substitutions s = x^a (left half) and t = (1-x)^b (right half)
            // absorb the endpoint singularities of the Beta density exactly,
            // so the adaptive rule never evaluates an unbounded integrand.
            double lb = log_beta(be->a, be->b);
            double a = be->a, b = be->b;
            double piece_tol = 0.5 * abs_tol * std::exp(lb);
            auto left = [&f, a, b](double s) {
                double x = std::pow(s, 1.0 / a);
                return f(x) * std::pow(1.0 - x, b - 1.0);
            };
            auto right = [&f, a, b](double t) {
                double x = 1.0 - std::pow(t, 1.0 / b);
                return f(x) * std::pow(x, a - 1.0);
            };
            double val = integrate(left, 0.0, std::pow(0.5, a), piece_tol).value / a +
                         integrate(right, 0.0, std::pow(0.5, b), piece_tol).value / b;
            total += be->weight * std::exp(-lb) * val;
        } else if (const auto* u = std::get_if<UniformDensity>(&c)) {
            total += u->weight * integrate(f, 0.0, 1.0, abs_tol).value;
        } else {
            const auto& pw = std::get<PiecewiseConstantDensity>(c);
            for (std::size_t i = 0; i < pw.heights.size(); ++i) {
                if (pw.heights[i] == 0.0) continue;
                int p = pw.power;
                auto g = [&f, p](double x) { return p ? f(x) * std::pow(x, -p) : f(x); };
                total += pw.heights[i] *
                         integrate(g, pw.breakpoints[i], pw.breakpoints[i + 1], abs_tol).value;
            }
        }
    }
    return total;
}

double lambda_rate(int b, int k, const BoundedMeasure& lambda1) {
    if (b < 2 || k < 2 || k > b) throw std::invalid_argument("lambda_rate: need 2 <= k <= b");
    return moment_rate(k - 2, b - k, lambda1);
}

double r_rate(int b, int k, const BoundedMeasure& lambda0) {
    if (b < 1 || k < 1 || k > b) throw std::invalid_argument("r_rate: need 1 <= k <= b");
    return moment_rate(k - 1, b - k, lambda0);
}

BoundedMeasure nu_measure(const BoundedMeasure& lambda, int power) {
    if (power != 1 && power != 2) throw std::invalid_argument("nu_measure: power must be 1 or 2");
    if (lambda.mass_at_zero() > 0.0)
        throw std::invalid_argument("nu_measure: measure must have no atom at 0");
    std::vector<MeasureComponent> out;
    bool infinite = false;
    for (const auto& c : lambda.components()) {
        if (const auto* d = std::get_if<Dirac>(&c)) {
            out.push_back(Dirac{d->location, d->weight * std::pow(d->location, -power)});
        } else if (const auto* be = std::get_if<BetaDensity>(&c)) {
            if (be->a - power > 0.0) {
                double scale = std::exp(log_beta(be->a - power, be->b) - log_beta(be->a, be->b));
                out.push_back(BetaDensity{be->a - power, be->b, be->weight * scale});
            } else if (be->weight > 0.0) {
                infinite = true;
            }
        } else if (const auto* u = std::get_if<UniformDensity>(&c)) {
            if (u->weight > 0.0) infinite = true;  // int x^{-power} dx diverges
        } else if (const auto* pw = std::get_if<PiecewiseConstantDensity>(&c)) {
            PiecewiseConstantDensity scaled = *pw;
            scaled.power += power;
            if (scaled.power > 2)
                throw std::invalid_argument("nu_measure: piecewise power out of range");
            // leading zero-height cells at 0 are harmless; a positive one is not
            if (pw->breakpoints.front() <= 0.0 && !pw->heights.empty() && pw->heights.front() > 0.0)
                infinite = true;
            else
                out.push_back(std::move(scaled));
        }
    }
    BoundedMeasure result(std::move(out));
    if (infinite) result.flag_infinite_mass();
    return result;
}

BoundedMeasure BoundedMeasure::parse(const std::string& spec) {
    std::vector<MeasureComponent> comps;
    if (spec.empty() || spec == "0" || spec == "zero") return BoundedMeasure();
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, '+')) {
        std::vector<std::string> f;
        std::stringstream ps(part);
        std::string tok;
        while (std::getline(ps, tok, ':')) f.push_back(tok);
        if (f.empty()) throw std::invalid_argument("measure spec: empty component");
        const std::string& kind = f[0];
        if (kind == "dirac0" && f.size() == 2) {
            comps.push_back(DiracAtZero{std::stod(f[1])});
        } else if (kind == "dirac" && f.size() == 3) {
            comps.push_back(Dirac{std::stod(f[1]), std::stod(f[2])});
        } else if (kind == "beta" && f.size() == 4) {
            comps.push_back(BetaDensity{std::stod(f[1]), std::stod(f[2]), std::stod(f[3])});
        } else if (kind == "uniform" && f.size() == 2) {
            comps.push_back(UniformDensity{std::stod(f[1])});
        } else if (kind == "pwc" && f.size() == 2) {
            std::vector<double> vals;
            std::stringstream vs(f[1]);
            std::string v;
            while (std::getline(vs, v, ',')) vals.push_back(std::stod(v));
            if (vals.size() < 3 || vals.size() % 2 == 0)
                throw std::invalid_argument("measure spec: pwc needs x0,h0,...,xn");
            PiecewiseConstantDensity p;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                if (i % 2 == 0)
                    p.breakpoints.push_back(vals[i]);
                else
                    p.heights.push_back(vals[i]);
            }
            comps.push_back(std::move(p));
        } else {
            throw std::invalid_argument("measure spec: unrecognized component `" + part + "`");
        }
    }
    return BoundedMeasure(std::move(comps));
}

std::string BoundedMeasure::to_string() const {
    if (components_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& c : components_) {
        if (!first) out << '+';
        first = false;
        if (const auto* d0 = std::get_if<DiracAtZero>(&c)) {
            out << "dirac0:" << d0->weight;
        } else if (const auto* d = std::get_if<Dirac>(&c)) {
            out << "dirac:" << d->location << ':' << d->weight;
        } else if (const auto* be = std::get_if<BetaDensity>(&c)) {
            out << "beta:" << be->a << ':' << be->b << ':' << be->weight;
        } else if (const auto* u = std::get_if<UniformDensity>(&c)) {
            out << "uniform:" << u->weight;
        } else {
            const auto& pw = std::get<PiecewiseConstantDensity>(c);
            out << "pwc:";
            for (std::size_t i = 0; i < pw.heights.size(); ++i)
                out << pw.breakpoints[i] << ',' << pw.heights[i] << ',';
            out << pw.breakpoints.back();
            if (pw.power) out << "^x-" << pw.power;
        }
    }
    if (infinite_mass_) out << " [infinite-mass]";
    return out.str();
}

}  // namespace mcoal
