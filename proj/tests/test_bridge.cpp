#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "mcoal/bridge.hpp"
#include "mcoal/coalescent.hpp"
#include "mcoal/stats.hpp"

using namespace mcoal;

namespace {

// Exact partition law of a single bridge (y, x, v) with v in (0,1): each of
// 1..n lands on the 0-plateau w.p. y, the v-plateau w.p. x, and otherwise on
// a continuous (a.s. unique) value. Enumeration oracle for the sampler.
std::map<DistinguishedPartition, double> exact_bridge_law(double y, double x, int n) {
    std::vector<double> probs{y, x, 1.0 - x - y};  // labels: zero, atom, dust
    std::map<DistinguishedPartition, double> law;
    std::vector<int> assign(n, 0);
    for (;;) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= probs[assign[i]];
        if (p > 0.0) {
            std::map<int, std::vector<int>> classes;
            classes[0].push_back(0);
            int dust_tag = 2;
            for (int i = 0; i < n; ++i) {
                int lab = assign[i] == 2 ? ++dust_tag : assign[i];
                classes[lab].push_back(i + 1);
            }
            std::vector<std::vector<int>> blocks;
            for (auto& [lab, members] : classes) blocks.push_back(std::move(members));
            law[DistinguishedPartition::from_blocks(n, std::move(blocks))] += p;
        }
        int i = n - 1;
        while (i >= 0 && ++assign[i] == 3) assign[i--] = 0;
        if (i < 0) break;
    }
    return law;
}

}  // namespace

TEST_CASE("bridge evaluation") {
    auto b = validate_bridge(0.2, 0.3, 0.4);
    CHECK(b.eval(0.0) == doctest::Approx(0.2));
    CHECK(b.eval(0.4) == doctest::Approx(0.2 + 0.3 + 0.4 * 0.5));
    CHECK(b.eval(1.0) == doctest::Approx(1.0));
    CHECK(b.eval(0.39) < b.eval(0.4));

    CHECK_THROWS(validate_bridge(0.7, 0.4, 0.5));  // x + y > 1
    CHECK_THROWS(validate_bridge(-0.1, 0.0, 0.5));
    CHECK_THROWS(validate_bridge(0.0, 0.0, 1.5));
    CHECK_THROWS(b.eval(1.5));
}

TEST_CASE("generalized inverse with plateau snapping") {
    DistinguishedBridge jump0{0.5, 0.0, 0.0};
    CHECK(jump0.inverse(0.75) == doctest::Approx(0.5));
    CHECK(jump0.inverse(0.3) == 0.0);  // exact plateau hit
    CHECK(jump0.inverse(0.5) == doctest::Approx(0.0));
    CHECK(jump0.inverse(1.0) == 1.0);

    DistinguishedBridge interior{0.0, 0.5, 0.4};  // slope 0.5, jump on [0.2, 0.7]
    CHECK(interior.inverse(0.1) == doctest::Approx(0.2));
    CHECK(interior.inverse(0.2) == 0.4);  // exact double v, not an approximation
    CHECK(interior.inverse(0.45) == 0.4);
    CHECK(interior.inverse(0.7) == 0.4);
    CHECK(interior.inverse(0.8) == doctest::Approx(0.6));

    DistinguishedBridge step{0.0, 1.0, 0.3};  // pure step at v
    CHECK(step.inverse(0.5) == 0.3);
    CHECK(step.eval(0.2) == doctest::Approx(0.0));
    CHECK(step.eval(0.3) == doctest::Approx(1.0));

    CHECK_THROWS(interior.inverse(-0.1));
}

TEST_CASE("inverse is a monotone right inverse on grids") {
    for (auto [y, x, v] : {std::tuple{0.2, 0.3, 0.4}, {0.0, 0.0, 0.0}, {0.5, 0.5, 0.9},
                           {0.1, 0.0, 0.0}, {0.0, 0.7, 0.25}}) {
        DistinguishedBridge b{y, x, v};
        double prev = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double u = i / 200.0;
            double r = b.inverse(u);
            CHECK(r >= prev - 1e-15);
            prev = r;
            // b(r) >= u and b(r') < u strictly left of r (checked off-grid)
            CHECK(b.eval(r) >= u - 1e-12);
            if (r > 1e-9) CHECK(b.eval(r * (1.0 - 1e-9)) <= u + 1e-9);
        }
    }
}

TEST_CASE("composite bridges chain factor maps in time order") {
    DistinguishedBridge f0{0.2, 0.1, 0.3}, f1{0.0, 0.4, 0.6}, f2{0.3, 0.0, 0.0};
    CompositeBridge comp{{f0, f1, f2}};
    for (double r : {0.0, 0.17, 0.5, 0.83, 1.0}) {
        CHECK(comp.eval(r) == doctest::Approx(f0.eval(f1.eval(f2.eval(r)))).epsilon(1e-14));
        CHECK(comp.inverse(r) == doctest::Approx(f2.inverse(f1.inverse(f0.inverse(r)))).epsilon(1e-14));
    }
    CompositeBridge empty;
    CHECK(empty.eval(0.37) == 0.37);
    CHECK(empty.inverse(0.37) == 0.37);
}

TEST_CASE("degenerate bridge partitions") {
    RandomSource rng(201, 0);
    CompositeBridge identity{{DistinguishedBridge{0.0, 0.0, 0.0}}};
    CompositeBridge absorb{{DistinguishedBridge{1.0, 0.0, 0.0}}};
    for (int r = 0; r < 100; ++r) {
        CHECK(partition_from_bridge(identity, 4, rng) == DistinguishedPartition::singletons(4));
        CHECK(partition_from_bridge(absorb, 4, rng) == DistinguishedPartition::whole(4));
    }
}

TEST_CASE("single-bridge partition law matches the enumeration oracle") {
    const double y = 0.3, x = 0.2;
    auto law = exact_bridge_law(y, x, 3);
    double mass = 0.0;
    for (const auto& [pi, p] : law) mass += p;
    CHECK(mass == doctest::Approx(1.0));

    CompositeBridge bridge{{DistinguishedBridge{y, x, 0.6}}};
    RandomSource rng(203, 0);
    const int reps = 100000;
    std::map<DistinguishedPartition, long long> counts;
    for (int r = 0; r < reps; ++r) ++counts[partition_from_bridge(bridge, 3, rng)];

    std::vector<double> observed, expected;
    for (const auto& [pi, p] : law) {
        expected.push_back(p * reps);
        auto it = counts.find(pi);
        observed.push_back(it == counts.end() ? 0.0 : static_cast<double>(it->second));
    }
    long long seen = 0;
    for (const auto& [pi, c] : counts) {
        CHECK(law.count(pi) == 1);  // nothing outside the oracle's support
        seen += c;
    }
    CHECK(seen == reps);
    CHECK(chi_square_gof(observed, expected).p_value > 0.001);
}

TEST_CASE("pair-merge probability of a v-plateau") {
    CompositeBridge bridge{{DistinguishedBridge{0.0, 0.5, 0.4}}};
    RandomSource rng(207, 0);
    const int reps = 50000;
    int both = 0;
    for (int r = 0; r < reps; ++r) {
        auto pi = partition_from_bridge(bridge, 2, rng);
        CHECK(pi.block(pi.block_of(0)).size() == 1);  // y = 0: nothing joins 0
        if (pi.block_of(1) == pi.block_of(2)) ++both;
    }
    double p = 0.25, se = std::sqrt(p * (1 - p) / reps);
    CHECK(std::abs(static_cast<double>(both) / reps - p) < 4 * se);
}

TEST_CASE("composition matches coagulation (exact and TV)") {
    DistinguishedBridge b1{0.5, 0.0, 0.0}, b2{0.5, 0.0, 0.0};
    RandomSource rng(211, 0);
    auto res = compose_check(b1, b2, 2, 100000, rng);
    CHECK(res.tv_distance < 0.02);
    // composite jump at 0 is 0.75, so P[whole] = 0.75^2
    auto whole = DistinguishedPartition::whole(2);
    CHECK(res.law_composite.at(whole) == doctest::Approx(0.5625).epsilon(0.03));
    CHECK(res.law_coag.at(whole) == doctest::Approx(0.5625).epsilon(0.03));

    DistinguishedBridge c1{0.2, 0.3, 0.7}, c2{0.1, 0.4, 0.3};
    auto res2 = compose_check(c1, c2, 3, 60000, rng);
    CHECK(res2.tv_distance < 0.02);

    CHECK_THROWS(compose_check(b1, b2, 6, 10, rng));
}

TEST_CASE("flow construction") {
    RandomSource rng(213, 0);
    auto empty = simulate_flow(BoundedMeasure::dirac(0.5, 1.0), BoundedMeasure::zero(), 0.0, rng);
    CHECK(empty.factors.empty());

    // nu0 = delta_1: the first atom maps everything to 0
    int whole_hits = 0;
    for (int r = 0; r < 300; ++r) {
        auto flow = simulate_flow(BoundedMeasure::dirac(1.0, 1.0), BoundedMeasure::zero(), 10.0, rng);
        if (!flow.factors.empty()) {
            CHECK(partition_from_bridge(flow, 3, rng) == DistinguishedPartition::whole(3));
            ++whole_hits;
        }
    }
    CHECK(whole_hits >= 295);  // P[no atom in 10 time units] = e^{-10}

    CHECK_THROWS(simulate_flow(nu_measure(BoundedMeasure::uniform(1.0), 1),
                               BoundedMeasure::zero(), 1.0, rng));
}

TEST_CASE("flow partition agrees with the coin-flip coalescent in law") {
    // Lambda_1 = delta_{0.5} <-> nu_1 = 4 delta_{0.5}; no immigration
    MParams m{BoundedMeasure::zero(), BoundedMeasure::dirac(0.5, 1.0)};
    auto nu1 = nu_measure(m.lambda1, 2);
    REQUIRE(nu1.total_mass() == doctest::Approx(4.0));
    const double t = 0.3;
    RandomSource rng_a(217, 0), rng_b(217, 1);
    const int reps = 20000;
    std::map<DistinguishedPartition, std::pair<long long, long long>> merged;
    for (int r = 0; r < reps; ++r) {
        auto flow = simulate_flow(BoundedMeasure::zero(), nu1, t, rng_a);
        ++merged[partition_from_bridge(flow, 3, rng_a)].first;
        auto traj = simulate_simple_poissonian(m, 3, t, rng_b);
        ++merged[traj.state_at(t)].second;
    }
    std::vector<std::pair<long long, long long>> counts;
    for (const auto& [pi, c] : merged) counts.push_back(c);
    CHECK(chi_square_two_sample(counts).p_value > 0.001);
}
