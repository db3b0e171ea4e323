#include "mcoal/coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mcoal {

namespace {

// C(b,2..b)*lambda_{b,k} and C(b,1..b)*r_{b,k}, indexed by k.
struct AggregatedRates {
    std::vector<double> merge;   // merge[k], k = 2..b (merge[0], merge[1] unused = 0)
    std::vector<double> absorb;  // absorb[k], k = 1..b
    double total = 0.0;
};

AggregatedRates aggregated_rates(int b, const MParams& m) {
    AggregatedRates agg;
    agg.merge.assign(b + 1, 0.0);
    agg.absorb.assign(b + 1, 0.0);
    double binom = b;  // C(b,1)
    for (int k = 1; k <= b; ++k) {
        if (k >= 2) agg.merge[k] = binom * lambda_rate(b, k, m.lambda1);
        agg.absorb[k] = binom * r_rate(b, k, m.lambda0);
        binom *= static_cast<double>(b - k) / (k + 1);
    }
    for (int k = 1; k <= b; ++k) agg.total += agg.merge[k] + agg.absorb[k];
    if (!std::isfinite(agg.total))
        throw std::runtime_error("simulate_m_coalescent: non-finite total rate");
    return agg;
}

// Uniform k-subset of {1,...,b} by partial Fisher-Yates.
std::vector<int> random_subset(int b, int k, RandomSource& rng) {
    std::vector<int> pool(b);
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.uniform() * (b - i));
        if (j >= b) j = b - 1;
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

// Partition of block indices {0,...,nblocks-1} merging `group` into one
// block, everything else singleton. `group` need not contain 0.
DistinguishedPartition index_merge(int nblocks, std::vector<int> group) {
    std::vector<std::vector<int>> blocks;
    std::sort(group.begin(), group.end());
    std::vector<char> in_group(nblocks, 0);
    for (int g : group) in_group[g] = 1;
    blocks.push_back(group);
    for (int i = 0; i < nblocks; ++i)
        if (!in_group[i]) blocks.push_back({i});
    return DistinguishedPartition::from_blocks(nblocks - 1, std::move(blocks));
}

}  // namespace

const DistinguishedPartition& CoalescentTrajectory::state_at(double t) const {
    const DistinguishedPartition* cur = &initial;
    for (const auto& [time, pi] : events) {
        if (time > t) break;
        cur = &pi;
    }
    return *cur;
}

CoalescentTrajectory simulate_m_coalescent(const MParams& m, int n,
                                           const DistinguishedPartition& start, Horizon horizon,
                                           RandomSource& rng) {
    if (start.ground_size() != n)
        throw std::invalid_argument("simulate_m_coalescent: start partition has wrong ground size");
    CoalescentTrajectory traj;
    traj.n = n;
    traj.initial = start;
    traj.horizon = horizon.value_or(0.0);

    std::map<int, AggregatedRates> memo;
    DistinguishedPartition pi = start;
    double t = 0.0;
    while (!pi.is_whole()) {
        int b = static_cast<int>(pi.block_count()) - 1;
        auto it = memo.find(b);
        if (it == memo.end()) it = memo.emplace(b, aggregated_rates(b, m)).first;
        const AggregatedRates& agg = it->second;
        if (!(agg.total > 0.0)) {
            if (!horizon)
                throw std::runtime_error(
                    "simulate_m_coalescent: zero total rate before absorption (needs a horizon)");
            break;
        }
        t += rng.exponential(agg.total);
        if (horizon && t > *horizon) break;

        // jump type and k proportional to the aggregate terms
        double u = rng.uniform() * agg.total;
        int k = 0;
        bool into_zero = false;
        for (int kk = 1; kk <= b; ++kk) {
            if (u < agg.merge[kk]) { k = kk; break; }
            u -= agg.merge[kk];
            if (u < agg.absorb[kk]) { k = kk; into_zero = true; break; }
            u -= agg.absorb[kk];
        }
        if (k == 0) { k = b; into_zero = true; }  // guard against roundoff

        std::vector<int> group = random_subset(b, k, rng);
        if (into_zero) group.push_back(0);
        pi = coag(pi, index_merge(b + 1, std::move(group)));
        traj.events.emplace_back(t, pi);
    }
    traj.absorbed = pi.is_whole();
    if (!horizon && traj.absorbed) traj.horizon = t;
    return traj;
}

CoalescentTrajectory simulate_poissonian(const GeneralCoagulationSpec& spec, int n,
                                         Horizon horizon, RandomSource& rng) {
    if (spec.c0 != 0.0 || spec.c1 != 0.0)
        throw std::invalid_argument("simulate_poissonian: Kingman parts not supported, use c0 = c1 = 0");
    std::vector<double> weights;
    double total = 0.0;
    for (const auto& [s, w] : spec.mixture) {
        if (!(w > 0.0)) throw std::invalid_argument("simulate_poissonian: weights must be positive");
        weights.push_back(w);
        total += w;
    }
    CoalescentTrajectory traj;
    traj.n = n;
    traj.initial = DistinguishedPartition::singletons(n);
    traj.horizon = horizon.value_or(0.0);

    DistinguishedPartition pi = traj.initial;
    double t = 0.0;
    while (!pi.is_whole()) {
        if (!(total > 0.0)) {
            if (!horizon)
                throw std::runtime_error("simulate_poissonian: empty mixture cannot absorb");
            break;
        }
        t += rng.exponential(total);
        if (horizon && t > *horizon) break;
        const auto& s = spec.mixture[rng.categorical(weights)].first;
        DistinguishedPartition pi_prime =
            sample_paintbox(s, static_cast<int>(pi.block_count()) - 1, rng);
        DistinguishedPartition next = coag(pi, pi_prime);
        if (next == pi) continue;  // no-op atom; path stays strictly coarsening
        pi = next;
        traj.events.emplace_back(t, pi);
    }
    traj.absorbed = pi.is_whole();
    if (!horizon && traj.absorbed) traj.horizon = t;
    return traj;
}

CoalescentTrajectory simulate_simple_poissonian(const MParams& m, int n, Horizon horizon,
                                                RandomSource& rng) {
    BoundedMeasure nu0 = nu_measure(m.lambda0, 1);
    BoundedMeasure nu1 = nu_measure(m.lambda1, 2);
    if (nu0.infinite_mass() || nu1.infinite_mass())
        throw std::invalid_argument("simulate_simple_poissonian: nu measure has infinite mass");
    double rate0 = nu0.total_mass();
    double rate1 = nu1.total_mass();
    double total = rate0 + rate1;

    CoalescentTrajectory traj;
    traj.n = n;
    traj.initial = DistinguishedPartition::singletons(n);
    traj.horizon = horizon.value_or(0.0);

    DistinguishedPartition pi = traj.initial;
    double t = 0.0;
    while (!pi.is_whole()) {
        if (!(total > 0.0)) {
            if (!horizon)
                throw std::runtime_error("simulate_simple_poissonian: zero intensity cannot absorb");
            break;
        }
        t += rng.exponential(total);
        if (horizon && t > *horizon) break;
        bool immigration = rng.uniform() * total < rate0;
        double x = immigration ? nu0.sample(rng) : nu1.sample(rng);
        int b = static_cast<int>(pi.block_count()) - 1;
        std::vector<int> heads;
        for (int i = 1; i <= b; ++i)
            if (rng.bernoulli(x)) heads.push_back(i);
        if (immigration) {
            if (heads.empty()) continue;
            heads.push_back(0);
        } else if (heads.size() < 2) {
            continue;
        }
        pi = coag(pi, index_merge(b + 1, std::move(heads)));
        traj.events.emplace_back(t, pi);
    }
    traj.absorbed = pi.is_whole();
    if (!horizon && traj.absorbed) traj.horizon = t;
    return traj;
}

double generator_apply(const std::function<double(const DistinguishedPartition&)>& F,
                       const DistinguishedPartition& pi, const MParams& m) {
    int b = static_cast<int>(pi.block_count()) - 1;
    if (b > 12) throw std::invalid_argument("generator_apply: more than 12 non-distinguished blocks");
    double f0 = F(pi);
    double out = 0.0;
    for (unsigned mask = 1; mask < (1u << b); ++mask) {
        int k = __builtin_popcount(mask);
        std::vector<int> group;
        for (int i = 0; i < b; ++i)
            if (mask & (1u << i)) group.push_back(i + 1);
        if (k >= 2) {
            double rate = lambda_rate(b, k, m.lambda1);
            if (rate != 0.0) out += rate * (F(coag(pi, index_merge(b + 1, group))) - f0);
        }
        double rate = r_rate(b, k, m.lambda0);
        if (rate != 0.0) {
            group.push_back(0);
            out += rate * (F(coag(pi, index_merge(b + 1, std::move(group)))) - f0);
        }
    }
    return out;
}

std::vector<std::pair<double, int>> block_count_path(const CoalescentTrajectory& traj) {
    std::vector<std::pair<double, int>> path;
    path.emplace_back(0.0, static_cast<int>(traj.initial.block_count()) - 1);
    for (const auto& [t, pi] : traj.events)
        path.emplace_back(t, static_cast<int>(pi.block_count()) - 1);
    return path;
}

std::optional<double> fixation_time(const CoalescentTrajectory& traj) {
    if (traj.initial.is_whole()) return 0.0;
    for (const auto& [t, pi] : traj.events)
        if (pi.is_whole()) return t;
    return std::nullopt;
}

}  // namespace mcoal
