#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mcoal/paintbox.hpp"
#include "mcoal/stats.hpp"

using namespace mcoal;

namespace {

// Exact paint-box law on P^0_n by enumerating label assignments of 1..n over
// {0, 1..K, dust}; dust draws are a.s. pairwise distinct, so dust acts as a
// per-index unique label. Independent oracle for the samplers.
std::map<DistinguishedPartition, double> exact_paintbox_law(const DistinguishedMassPartition& s,
                                                            int n) {
    const int k = static_cast<int>(s.tail().size());
    std::vector<double> probs;  // label 0, labels 1..K, dust
    probs.push_back(s.s0());
    for (double v : s.tail()) probs.push_back(v);
    probs.push_back(s.dust());
    const int labels = k + 2;

    std::map<DistinguishedPartition, double> law;
    std::vector<int> assign(n, 0);
    for (;;) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= probs[assign[i]];
        if (p > 0.0) {
            std::map<int, std::vector<int>> classes;
            classes[0].push_back(0);  // X_0 = 0
            int dust_tag = labels;
            for (int i = 0; i < n; ++i) {
                int lab = assign[i] == labels - 1 ? dust_tag++ : assign[i];
                classes[lab].push_back(i + 1);
            }
            std::vector<std::vector<int>> blocks;
            for (auto& [lab, members] : classes) blocks.push_back(std::move(members));
            law[DistinguishedPartition::from_blocks(n, std::move(blocks))] += p;
        }
        int i = n - 1;
        while (i >= 0 && ++assign[i] == labels) assign[i--] = 0;
        if (i < 0) break;
    }
    return law;
}

}  // namespace

TEST_CASE("mass partition validation and text form") {
    DistinguishedMassPartition s(0.2, {0.3, 0.1});
    CHECK(s.dust() == doctest::Approx(0.4));
    CHECK(s.to_string() == "0.2;0.3,0.1");
    auto r = DistinguishedMassPartition::parse("0.2;0.3,0.1");
    CHECK(r.s0() == doctest::Approx(0.2));
    CHECK(r.tail().size() == 2);

    CHECK_THROWS(DistinguishedMassPartition(0.5, {0.1, 0.2}));  // tail not non-increasing
    CHECK_THROWS(DistinguishedMassPartition(0.9, {0.3}));       // sum > 1
    CHECK_THROWS(DistinguishedMassPartition(-0.1, {}));
}

TEST_CASE("degenerate paint-boxes") {
    RandomSource rng(1, 0);
    DistinguishedMassPartition all_zero(1.0, {});
    DistinguishedMassPartition all_dust(0.0, {});
    for (int rep = 0; rep < 50; ++rep) {
        CHECK(sample_paintbox(all_zero, 4, rng) == DistinguishedPartition::whole(4));
        CHECK(sample_paintbox(all_dust, 4, rng) == DistinguishedPartition::singletons(4));
    }
}

TEST_CASE("singleton probabilities") {
    DistinguishedMassPartition s(0.2, {0.3});  // dust 0.5
    CHECK(singleton_probability(s, 3) == doctest::Approx(0.125));
    CHECK(singleton_probability(s, 0) == 1.0);
    CHECK(singleton_probability(DistinguishedMassPartition(0.5, {0.5}), 1) == 0.0);
    CHECK(singleton_probability(DistinguishedMassPartition(0.0, {}), 7) == 1.0);

    CHECK(zero_singleton_probability(DistinguishedMassPartition(0.3, {})) == 0.0);
    CHECK(zero_singleton_probability(DistinguishedMassPartition(0.0, {0.4})) == 1.0);
    CHECK(zero_singleton_probability(DistinguishedMassPartition(1.0, {})) == 0.0);
}

TEST_CASE("MC singleton law: P[1,2,3 singletons] = dust^3") {
    // the identity is about the infinite paint-box, where a singleton means a
    // dust draw; on a small ground set an index can also be a singleton by
    // holding a positive label alone, so sample n = 30 where that residual
    // probability (3 * 0.3 * 0.7^29 ~ 3e-5) is far below the MC tolerance
    DistinguishedMassPartition s(0.2, {0.3});  // dust 0.5
    RandomSource rng(7, 0);
    const int reps = 100000;
    int hits = 0;
    for (int r = 0; r < reps; ++r) {
        auto pi = sample_paintbox(s, 30, rng);
        bool all_single = true;
        for (int i = 1; i <= 3; ++i)
            if (pi.block(pi.block_of(i)).size() != 1) all_single = false;
        if (all_single) ++hits;
    }
    double p = 0.125;
    double se = std::sqrt(p * (1 - p) / reps);
    CHECK(std::abs(static_cast<double>(hits) / reps - p) < 3 * se);
}

TEST_CASE("asymptotic frequencies at n = 1e5") {
    DistinguishedMassPartition s(0.2, {0.3, 0.1});  // dust 0.4
    RandomSource rng(11, 0);
    const int n = 100000;
    auto pi = sample_paintbox(s, n, rng);
    auto freqs = empirical_frequencies(pi);
    auto se = [&](double p) { return std::sqrt(p * (1 - p) / n); };
    CHECK(std::abs(freqs[0].second - 0.2) < 3 * se(0.2));

    // ranked non-distinguished block frequencies approach the tail; the dust
    // fraction approaches delta
    std::vector<double> ranked;
    int singletons = 0;
    for (std::size_t i = 1; i < freqs.size(); ++i) {
        if (pi.block(freqs[i].first).size() == 1)
            ++singletons;
        else
            ranked.push_back(freqs[i].second);
    }
    std::sort(ranked.rbegin(), ranked.rend());
    REQUIRE(ranked.size() == 2);
    CHECK(std::abs(ranked[0] - 0.3) < 3 * se(0.3));
    CHECK(std::abs(ranked[1] - 0.1) < 3 * se(0.1));
    CHECK(std::abs(static_cast<double>(singletons) / n - 0.4) < 3 * se(0.4));

    // every non-singleton block's label has positive mass: with only three
    // positive labels, at most 3 non-singleton blocks
    CHECK(ranked.size() + 1 <= 3);
}

TEST_CASE("sampler matches the exact enumeration law (chi-square)") {
    DistinguishedMassPartition s(0.2, {0.3, 0.1});
    auto law = exact_paintbox_law(s, 3);
    double mass = 0.0;
    for (const auto& [pi, p] : law) mass += p;
    CHECK(mass == doctest::Approx(1.0));

    RandomSource rng(13, 0);
    const int reps = 100000;
    std::map<DistinguishedPartition, long long> counts;
    for (int r = 0; r < reps; ++r) ++counts[sample_paintbox(s, 3, rng)];

    std::vector<double> observed, expected;
    for (const auto& [pi, p] : law) {
        expected.push_back(p * reps);
        auto it = counts.find(pi);
        observed.push_back(it == counts.end() ? 0.0 : static_cast<double>(it->second));
    }
    auto res = chi_square_gof(observed, expected);
    CHECK(res.p_value > 0.001);
}

TEST_CASE("interval sampler agrees with the categorical sampler") {
    DistinguishedMassPartition s(0.15, {0.25, 0.2});
    RandomSource rng_a(17, 0), rng_b(17, 1);
    const int reps = 30000;
    std::map<DistinguishedPartition, long long> a, b;
    for (int r = 0; r < reps; ++r) {
        ++a[sample_paintbox(s, 3, rng_a)];
        ++b[sample_paintbox_intervals(s, 3, rng_b)];
    }
    std::map<DistinguishedPartition, std::pair<long long, long long>> merged;
    for (const auto& [pi, c] : a) merged[pi].first = c;
    for (const auto& [pi, c] : b) merged[pi].second = c;
    std::vector<std::pair<long long, long long>> counts;
    for (const auto& [pi, c] : merged) counts.push_back(c);
    CHECK(chi_square_two_sample(counts).p_value > 0.001);
}

TEST_CASE("exchangeability under permutations fixing 0") {
    // law of sigma(pi) equals law of pi for the paint-box
    DistinguishedMassPartition s(0.2, {0.3});
    auto sigma = Permutation::from_map({0, 2, 1});
    RandomSource rng(19, 0);
    const int reps = 50000;
    std::map<DistinguishedPartition, std::pair<long long, long long>> merged;
    for (int r = 0; r < reps; ++r) {
        auto pi = sample_paintbox(s, 2, rng);
        ++merged[pi].first;
        ++merged[apply_permutation(sigma, pi)].second;
    }
    std::vector<std::pair<long long, long long>> counts;
    for (const auto& [pi, c] : merged) counts.push_back(c);
    CHECK(chi_square_two_sample(counts).p_value > 0.001);
}
