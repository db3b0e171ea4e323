#include "mcoal/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcoal {

DistinguishedBridge validate_bridge(double y, double x, double v) {
    if (!(y >= 0.0 && x >= 0.0 && y + x <= 1.0 + 1e-15))
        throw std::invalid_argument("bridge: need y, x >= 0 and x + y <= 1");
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("bridge: v must lie in [0,1]");
    return DistinguishedBridge{y, x, v};
}

double DistinguishedBridge::eval(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("bridge eval: r outside [0,1]");
    return y + (v <= r ? x : 0.0) + r * (1.0 - x - y);
}

double DistinguishedBridge::inverse(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("bridge inverse: u outside [0,1]");
    if (u >= 1.0) return 1.0;
    if (u < y) return 0.0;  // plateau swallowed by the jump at 0
    const double s = 1.0 - x - y;
    if (x > 0.0) {
        const double lo = y + s * v;  // b(v-)
        const double hi = lo + x;     // b(v)
        if (u >= lo && u <= hi) return v;
        if (u < lo) return (u - y) / s;  // u >= y and u < lo force s > 0
        if (s > 0.0) return (u - y - x) / s;
        return 1.0;
    }
    if (s > 0.0) return (u - y) / s;
    return 1.0;  // y = 1 degenerate bridge; u >= 1 already handled
}

double CompositeBridge::eval(double r) const {
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) r = it->eval(r);
    return r;
}

double CompositeBridge::inverse(double u) const {
    for (const auto& f : factors) u = f.inverse(u);
    return u;
}

namespace {

// Group indices 0..n by exact equality of values[i]; index 0's class is
// distinguished. Relies on plateau snapping: collided inverses are
// bit-identical by construction.
DistinguishedPartition group_by_value(int n, const std::vector<double>& values) {
    std::map<double, std::vector<int>> classes;
    for (int i = 0; i <= n; ++i) classes[values[i]].push_back(i);
    std::vector<std::vector<int>> blocks;
    for (auto& [val, members] : classes) blocks.push_back(std::move(members));
    return DistinguishedPartition::from_blocks(n, std::move(blocks));
}

double tv_distance(const std::map<DistinguishedPartition, double>& p,
                   const std::map<DistinguishedPartition, double>& q) {
    double d = 0.0;
    for (const auto& [pi, w] : p) {
        auto it = q.find(pi);
        d += std::abs(w - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [pi, w] : q)
        if (!p.count(pi)) d += w;
    return 0.5 * d;
}

}  // namespace

DistinguishedPartition partition_from_bridge(const CompositeBridge& bridge, int n,
                                             RandomSource& rng) {
    std::vector<double> inv(n + 1);
    inv[0] = bridge.inverse(0.0);
    for (int i = 1; i <= n; ++i) inv[i] = bridge.inverse(rng.uniform());
    return group_by_value(n, inv);
}

ComposeCheckResult compose_check(const DistinguishedBridge& b1, const DistinguishedBridge& b2,
                                 int n, int replicas, RandomSource& rng) {
    if (n > 5) throw std::invalid_argument("compose_check: n capped at 5 (law enumeration scale)");
    ComposeCheckResult out;
    const double w = 1.0 / replicas;

    CompositeBridge composite{{b1, b2}};
    for (int r = 0; r < replicas; ++r)
        out.law_composite[partition_from_bridge(composite, n, rng)] += w;

    for (int r = 0; r < replicas; ++r) {
        // pi from b1; the surviving inverse values (one per block, block 0
        // carrying b1^{-1}(0)) drive pi' from b2, exactly as in the
        // composition identity.
        std::vector<double> inv(n + 1);
        inv[0] = b1.inverse(0.0);
        for (int i = 1; i <= n; ++i) inv[i] = b1.inverse(rng.uniform());
        DistinguishedPartition pi = group_by_value(n, inv);

        int m = static_cast<int>(pi.block_count()) - 1;
        std::vector<double> inv2(m + 1);
        for (int j = 0; j <= m; ++j) inv2[j] = b2.inverse(inv[pi.block(j).front()]);
        DistinguishedPartition pi_prime = group_by_value(m, inv2);
        out.law_coag[coag(pi, pi_prime)] += w;
    }

    out.tv_distance = tv_distance(out.law_composite, out.law_coag);
    return out;
}

CompositeBridge simulate_flow(const BoundedMeasure& nu0, const BoundedMeasure& nu1, double t,
                              RandomSource& rng) {
    if (nu0.infinite_mass() || nu1.infinite_mass())
        throw std::invalid_argument("simulate_flow: nu measure has infinite mass");
    const double rate0 = nu0.total_mass();
    const double rate1 = nu1.total_mass();
    const double total = rate0 + rate1;
    CompositeBridge bridge;
    if (!(total > 0.0)) return bridge;
    double s = 0.0;
    for (;;) {
        s += rng.exponential(total);
        if (s > t) break;
        if (rng.uniform() * total < rate0) {
            bridge.factors.push_back(DistinguishedBridge{nu0.sample(rng), 0.0, 0.0});
        } else {
            bridge.factors.push_back(DistinguishedBridge{0.0, nu1.sample(rng), rng.uniform()});
        }
    }
    return bridge;
}

}  // namespace mcoal
