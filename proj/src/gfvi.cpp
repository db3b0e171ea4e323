#include "mcoal/gfvi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mcoal/coalescent.hpp"
#include "mcoal/quadrature.hpp"

namespace mcoal {

namespace {

constexpr std::size_t kLebesgueNodes = 16;

// Finite representation of rho for exact tensor-moment sums: discrete parts
// verbatim, the Lebesgue part on Gauss-Legendre nodes.
struct Support {
    std::vector<double> loc;
    std::vector<double> w;
};

Support build_support(const AtomicProbabilityMeasure& rho) {
    Support s;
    if (rho.w0 > 0.0) {
        s.loc.push_back(0.0);
        s.w.push_back(rho.w0);
    }
    for (const auto& [a, w] : rho.atoms) {
        if (w > 0.0) {
            s.loc.push_back(a);
            s.w.push_back(w);
        }
    }
    if (rho.lebesgue > 0.0) {
        const auto& gl = gauss_legendre(kLebesgueNodes);
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            s.loc.push_back(gl.nodes[k]);
            s.w.push_back(rho.lebesgue * gl.weights[k]);
        }
    }
    return s;
}

// Z -> (1 - size) Z + size delta_loc (loc = 0 when at_zero).
AtomicProbabilityMeasure apply_jump(const AtomicProbabilityMeasure& z, double size, double loc,
                                    bool at_zero) {
    AtomicProbabilityMeasure out = z;
    const double keep = 1.0 - size;
    out.w0 *= keep;
    out.lebesgue *= keep;
    for (auto& [a, w] : out.atoms) w *= keep;
    if (at_zero) {
        out.w0 += size;
    } else {
        bool merged = false;
        for (auto& [a, w] : out.atoms)
            if (a == loc) {
                w += size;
                merged = true;
                break;
            }
        if (!merged) out.atoms.emplace_back(loc, size);
    }
    return out;
}

void check_p(int p) {
    if (p < 1 || p > 4) throw std::invalid_argument("moment order p must lie in 1..4");
}

}  // namespace

double AtomicProbabilityMeasure::total_mass() const {
    double total = w0 + lebesgue;
    for (const auto& [a, w] : atoms) total += w;
    return total;
}

double AtomicProbabilityMeasure::mean() const {
    double m = 0.5 * lebesgue;
    for (const auto& [a, w] : atoms) m += a * w;
    return m;
}

void AtomicProbabilityMeasure::validate() const {
    if (!(w0 >= 0.0 && lebesgue >= 0.0))
        throw std::invalid_argument("AtomicProbabilityMeasure: negative weight");
    for (const auto& [a, w] : atoms)
        if (!(w >= 0.0 && a > 0.0 && a < 1.0))
            throw std::invalid_argument("AtomicProbabilityMeasure: atom outside (0,1) or negative");
    if (std::abs(total_mass() - 1.0) > 1e-12)
        throw std::invalid_argument("AtomicProbabilityMeasure: total mass must be 1");
}

void AtomicProbabilityMeasure::compact() {
    double dropped = 0.0;
    auto keep_end = std::remove_if(atoms.begin(), atoms.end(), [&](const auto& atom) {
        if (atom.second < 1e-15) {
            dropped += atom.second;
            return true;
        }
        return false;
    });
    atoms.erase(keep_end, atoms.end());
    lebesgue += dropped;  // residual correction keeps total mass exact
}

AtomicProbabilityMeasure gfvi_step(const AtomicProbabilityMeasure& z, const GfviEvent& event) {
    if (!(event.size >= 0.0 && event.size <= 1.0))
        throw std::invalid_argument("gfvi_step: jump size outside [0,1]");
    AtomicProbabilityMeasure out =
        event.kind == GfviEvent::Kind::Immigration
            ? apply_jump(z, event.size, 0.0, true)
            : apply_jump(z, event.size, event.parent_loc, event.parent_at_zero);
    out.compact();
    return out;
}

ParentDraw sample_parent(const AtomicProbabilityMeasure& z, RandomSource& rng) {
    std::vector<double> weights;
    weights.reserve(z.atoms.size() + 2);
    weights.push_back(z.w0);
    for (const auto& [a, w] : z.atoms) weights.push_back(w);
    weights.push_back(z.lebesgue);
    std::size_t idx = rng.categorical(weights);
    if (idx == 0) return {0.0, true};
    if (idx <= z.atoms.size()) return {z.atoms[idx - 1].first, false};
    return {rng.uniform(), false};  // fresh uniform atom location
}

AtomicProbabilityMeasure GfviTrajectory::state_at(double t) const {
    AtomicProbabilityMeasure z = initial;
    for (const auto& e : events) {
        if (e.time > t) break;
        z = gfvi_step(z, e);
    }
    return z;
}

GfviTrajectory simulate_gfvi(const BoundedMeasure& nu0, const BoundedMeasure& nu1,
                             const AtomicProbabilityMeasure& z0, double t, RandomSource& rng) {
    if (nu0.infinite_mass() || nu1.infinite_mass())
        throw std::invalid_argument("simulate_gfvi: nu measure has infinite mass");
    z0.validate();
    const double rate0 = nu0.total_mass();
    const double rate1 = nu1.total_mass();
    const double total = rate0 + rate1;

    GfviTrajectory traj;
    traj.initial = z0;
    traj.final_state = z0;
    traj.horizon = t;
    if (!(total > 0.0)) return traj;

    double s = 0.0;
    AtomicProbabilityMeasure z = z0;
    for (;;) {
        s += rng.exponential(total);
        if (s > t) break;
        GfviEvent event;
        event.time = s;
        if (rng.uniform() * total < rate0) {
            event.kind = GfviEvent::Kind::Immigration;
            event.size = nu0.sample(rng);
        } else {
            event.kind = GfviEvent::Kind::Reproduction;
            event.size = nu1.sample(rng);
            ParentDraw parent = sample_parent(z, rng);
            event.parent_loc = parent.location;
            event.parent_at_zero = parent.at_zero;
        }
        z = gfvi_step(z, event);
        traj.events.push_back(event);
    }
    traj.final_state = z;
    return traj;
}

double moment_functional(const MomentFunction& f, int p, const AtomicProbabilityMeasure& rho) {
    check_p(p);
    Support s = build_support(rho);
    const std::size_t m = s.loc.size();
    std::vector<double> args(p);
    std::vector<std::size_t> idx(p, 0);
    double total = 0.0;
    for (;;) {
        double weight = 1.0;
        for (int j = 0; j < p; ++j) {
            weight *= s.w[idx[j]];
            args[j] = s.loc[idx[j]];
        }
        total += weight * f(args);
        int j = p - 1;
        while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
        if (j < 0) break;
    }
    return total;
}

double duality_functional(const MomentFunction& f, int p, const AtomicProbabilityMeasure& m,
                          const DistinguishedPartition& pi) {
    check_p(p);
    if (pi.ground_size() != p)
        throw std::invalid_argument("duality_functional: partition must live on {0,...,p}");
    const int nvars = static_cast<int>(pi.block_count()) - 1;  // block 0 pinned to 0
    std::vector<std::size_t> coord_block(p + 1);
    for (int j = 0; j <= p; ++j) coord_block[j] = pi.block_of(j);
    std::vector<double> args(p);
    if (nvars == 0) {
        std::fill(args.begin(), args.end(), 0.0);
        return f(args);
    }
    Support s = build_support(m);
    const std::size_t supp = s.loc.size();
    std::vector<std::size_t> idx(nvars, 0);
    double total = 0.0;
    for (;;) {
        double weight = 1.0;
        for (int b = 0; b < nvars; ++b) weight *= s.w[idx[b]];
        for (int j = 1; j <= p; ++j) {
            std::size_t b = coord_block[j];
            args[j - 1] = b == 0 ? 0.0 : s.loc[idx[b - 1]];
        }
        total += weight * f(args);
        int b = nvars - 1;
        while (b >= 0 && ++idx[b] == supp) idx[b--] = 0;
        if (b < 0) break;
    }
    return total;
}

double gfvi_generator_apply(const MomentFunction& f, int p, const AtomicProbabilityMeasure& rho,
                            const BoundedMeasure& nu0, const BoundedMeasure& nu1) {
    check_p(p);
    if (nu0.infinite_mass() || nu1.infinite_mass())
        throw std::invalid_argument("gfvi_generator_apply: nu measure has infinite mass");
    rho.validate();
    const double base = moment_functional(f, p, rho);
    Support s = build_support(rho);

    double total = 0.0;
    if (nu1.total_mass() > 0.0) {
        auto inner = [&](double x) {
            double acc = 0.0;
            for (std::size_t a = 0; a < s.loc.size(); ++a) {
                AtomicProbabilityMeasure pushed = apply_jump(rho, x, s.loc[a], s.loc[a] == 0.0);
                acc += s.w[a] * (moment_functional(f, p, pushed) - base);
            }
            return acc;
        };
        total += nu1.integrate_against(inner, 1e-8);
    }
    if (nu0.total_mass() > 0.0) {
        auto inner = [&](double y) {
            return moment_functional(f, p, apply_jump(rho, y, 0.0, true)) - base;
        };
        total += nu0.integrate_against(inner, 1e-8);
    }
    return total;
}

DualityReport duality_check(const MParams& m, int p, const MomentFunction& f, double t,
                            int replicas, std::uint64_t seed) {
    check_p(p);
    if (replicas < 2) throw std::invalid_argument("duality_check: need at least 2 replicas");
    BoundedMeasure nu0 = nu_measure(m.lambda0, 1);
    BoundedMeasure nu1 = nu_measure(m.lambda1, 2);
    if (nu0.infinite_mass() || nu1.infinite_mass())
        throw std::invalid_argument("duality_check: nu measure has infinite mass");

    const AtomicProbabilityMeasure lebesgue = AtomicProbabilityMeasure::uniform();
    const DistinguishedPartition start = DistinguishedPartition::singletons(p);
    std::map<DistinguishedPartition, double> phi_cache;

    double lhs_sum = 0.0, lhs_sq = 0.0, rhs_sum = 0.0, rhs_sq = 0.0;
    for (int r = 0; r < replicas; ++r) {
        RandomSource rng_l(seed, 2 * static_cast<std::uint64_t>(r));
        CoalescentTrajectory traj_l = simulate_m_coalescent(m, p, start, t, rng_l);
        const DistinguishedPartition& pi = traj_l.final_state();
        auto it = phi_cache.find(pi);
        if (it == phi_cache.end())
            it = phi_cache.emplace(pi, duality_functional(f, p, lebesgue, pi)).first;
        lhs_sum += it->second;
        lhs_sq += it->second * it->second;

        RandomSource rng_r(seed, 2 * static_cast<std::uint64_t>(r) + 1);
        GfviTrajectory traj = simulate_gfvi(nu0, nu1, lebesgue, t, rng_r);
        double val = moment_functional(f, p, traj.final_state);
        rhs_sum += val;
        rhs_sq += val * val;
    }

    DualityReport rep;
    rep.replicas = replicas;
    rep.lhs_mean = lhs_sum / replicas;
    rep.rhs_mean = rhs_sum / replicas;
    double lvar = std::max(0.0, lhs_sq / replicas - rep.lhs_mean * rep.lhs_mean);
    double rvar = std::max(0.0, rhs_sq / replicas - rep.rhs_mean * rep.rhs_mean);
    rep.lhs_se = std::sqrt(lvar / (replicas - 1));
    rep.rhs_se = std::sqrt(rvar / (replicas - 1));
    double denom = std::sqrt(rep.lhs_se * rep.lhs_se + rep.rhs_se * rep.rhs_se);
    rep.z_score = denom > 0.0 ? (rep.lhs_mean - rep.rhs_mean) / denom : 0.0;
    return rep;
}

}  // namespace mcoal
