#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcoal/gfvi.hpp"
#include "mcoal/stats.hpp"

using namespace mcoal;

namespace {

double product(const std::vector<double>& xs) {
    double p = 1.0;
    for (double x : xs) p *= x;
    return p;
}

}  // namespace

TEST_CASE("state validation and summaries") {
    auto u = AtomicProbabilityMeasure::uniform();
    u.validate();
    CHECK(u.total_mass() == doctest::Approx(1.0));
    CHECK(u.mean() == doctest::Approx(0.5));
    CHECK(AtomicProbabilityMeasure::delta_zero().mean() == 0.0);

    AtomicProbabilityMeasure mix{0.2, {{0.5, 0.3}}, 0.5};
    mix.validate();
    CHECK(mix.mean() == doctest::Approx(0.4));

    CHECK_THROWS(AtomicProbabilityMeasure{0.5, {}, 0.2}.validate());   // mass != 1
    CHECK_THROWS(AtomicProbabilityMeasure{0.0, {{1.5, 0.5}}, 0.5}.validate());

    AtomicProbabilityMeasure tiny{0.5, {{0.3, 1e-20}, {0.4, 0.5 - 1e-20}}, 0.0};
    tiny.compact();
    CHECK(tiny.atoms.size() == 1);
    CHECK(tiny.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("single jumps") {
    auto u = AtomicProbabilityMeasure::uniform();

    GfviEvent immig{GfviEvent::Kind::Immigration, 0.1, 0.5, 0.0, false};
    auto z1 = gfvi_step(u, immig);
    CHECK(z1.w0 == doctest::Approx(0.5));
    CHECK(z1.lebesgue == doctest::Approx(0.5));
    CHECK(z1.atoms.empty());

    GfviEvent full{GfviEvent::Kind::Immigration, 0.1, 1.0, 0.0, false};
    auto z2 = gfvi_step(u, full);
    CHECK(z2.w0 == doctest::Approx(1.0));
    CHECK(z2.lebesgue == doctest::Approx(0.0));

    GfviEvent nothing{GfviEvent::Kind::Reproduction, 0.1, 0.0, 0.7, false};
    auto z3 = gfvi_step(u, nothing);
    CHECK(z3.lebesgue == doctest::Approx(1.0));

    GfviEvent repro{GfviEvent::Kind::Reproduction, 0.1, 0.3, 0.4, false};
    auto z4 = gfvi_step(u, repro);
    REQUIRE(z4.atoms.size() == 1);
    CHECK(z4.atoms[0].first == 0.4);
    CHECK(z4.atoms[0].second == doctest::Approx(0.3));
    CHECK(z4.lebesgue == doctest::Approx(0.7));

    // reproduction onto an existing atom merges exactly
    auto z5 = gfvi_step(z4, GfviEvent{GfviEvent::Kind::Reproduction, 0.2, 0.5, 0.4, false});
    REQUIRE(z5.atoms.size() == 1);
    CHECK(z5.atoms[0].second == doctest::Approx(0.3 * 0.5 + 0.5));

    CHECK_THROWS(gfvi_step(u, GfviEvent{GfviEvent::Kind::Immigration, 0.0, 1.5, 0.0, false}));
}

TEST_CASE("mass conservation along long trajectories") {
    auto nu0 = BoundedMeasure::dirac(0.3, 2.0);
    auto nu1 = BoundedMeasure::dirac(0.5, 2.0);
    RandomSource rng(301, 0);
    auto traj = simulate_gfvi(nu0, nu1, AtomicProbabilityMeasure::uniform(), 100.0, rng);
    CHECK(traj.events.size() > 200);
    CHECK(traj.final_state.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    traj.final_state.validate();
    auto mid = traj.state_at(50.0);
    CHECK(mid.total_mass() == doctest::Approx(1.0).epsilon(1e-9));

    RandomSource rng2(301, 1);
    CHECK_THROWS(simulate_gfvi(nu_measure(BoundedMeasure::uniform(1.0), 2), nu0,
                               AtomicProbabilityMeasure::uniform(), 1.0, rng2));
}

TEST_CASE("full immigration resets: E[mean Z_t] = e^{-t} / 2") {
    auto nu0 = BoundedMeasure::dirac(1.0, 1.0);
    RandomSource rng(307, 0);
    const double t = 1.0;
    const int reps = 20000;
    std::vector<double> means;
    for (int r = 0; r < reps; ++r) {
        auto traj = simulate_gfvi(nu0, BoundedMeasure::zero(),
                                  AtomicProbabilityMeasure::uniform(), t, rng);
        means.push_back(traj.final_state.mean());
    }
    auto s = mean_se(means);
    CHECK(std::abs(s.mean - 0.5 * std::exp(-t)) < 4 * s.se);
}

TEST_CASE("moment functionals") {
    auto u = AtomicProbabilityMeasure::uniform();
    auto id = [](const std::vector<double>& xs) { return xs[0]; };
    CHECK(moment_functional(id, 1, u) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(moment_functional(product, 2, u) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(moment_functional(product, 4, u) == doctest::Approx(0.0625).epsilon(1e-12));

    AtomicProbabilityMeasure mix{0.2, {{0.5, 0.3}}, 0.5};
    double mean = mix.mean();
    CHECK(moment_functional(id, 1, mix) == doctest::Approx(mean).epsilon(1e-12));
    // product functions factorize over the tensor power
    CHECK(moment_functional(product, 3, mix) == doctest::Approx(mean * mean * mean).epsilon(1e-12));

    CHECK_THROWS(moment_functional(product, 0, u));
    CHECK_THROWS(moment_functional(product, 5, u));
}

TEST_CASE("duality functionals") {
    auto u = AtomicProbabilityMeasure::uniform();
    // singletons: independent integration variables
    CHECK(duality_functional(product, 2, u, DistinguishedPartition::singletons(2)) ==
          doctest::Approx(0.25).epsilon(1e-12));
    // whole: every coordinate pinned to 0
    CHECK(duality_functional(product, 2, u, DistinguishedPartition::whole(2)) ==
          doctest::Approx(0.0));
    auto shifted = [](const std::vector<double>& xs) {
        double p = 1.0;
        for (double x : xs) p *= 1.0 + x;
        return p;
    };
    CHECK(duality_functional(shifted, 2, u, DistinguishedPartition::whole(2)) ==
          doctest::Approx(1.0));
    // 0|1,2: both coordinates share one variable, int v^2 dv = 1/3
    CHECK(duality_functional(product, 2, u, DistinguishedPartition::parse("0|1,2")) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    // 0,1|2: first coordinate pinned, second free
    CHECK(duality_functional(product, 2, u, DistinguishedPartition::parse("0,1|2")) ==
          doctest::Approx(0.0));
    CHECK_THROWS(duality_functional(product, 2, u, DistinguishedPartition::singletons(3)));
}

TEST_CASE("GFVI generator examples") {
    auto u = AtomicProbabilityMeasure::uniform();
    auto one = [](const std::vector<double>&) { return 1.0; };
    auto id = [](const std::vector<double>& xs) { return xs[0]; };
    auto nu0 = BoundedMeasure::dirac(1.0, 1.0);
    auto nu1 = BoundedMeasure::dirac(0.5, 2.0);

    CHECK(gfvi_generator_apply(one, 2, u, nu0, nu1) == doctest::Approx(0.0).epsilon(1e-9));
    // full immigration at rate 1: L<id> = G_id(delta_0) - G_id(rho) = -mean
    CHECK(gfvi_generator_apply(id, 1, u, nu0, BoundedMeasure::zero()) ==
          doctest::Approx(-0.5).epsilon(1e-8));
    // reproduction preserves the mean: the drift of the first moment is 0
    CHECK(gfvi_generator_apply(id, 1, u, BoundedMeasure::zero(), nu1) ==
          doctest::Approx(0.0).epsilon(1e-8));
    CHECK(gfvi_generator_apply(id, 1, AtomicProbabilityMeasure::delta_zero(),
                               BoundedMeasure::zero(), nu1) == doctest::Approx(0.0).epsilon(1e-9));
    // second moment of the mean grows under reproduction: for f = x1 x2,
    // L G_f(rho) = nu1-rate * x^2 * Var_rho = 2 * 0.25 * 1/12
    CHECK(gfvi_generator_apply(product, 2, u, BoundedMeasure::zero(), nu1) ==
          doctest::Approx(2.0 * 0.25 / 12.0).epsilon(1e-7));
}

TEST_CASE("GFVI martingale residual for f = x1 x2") {
    auto nu0 = BoundedMeasure::dirac(0.3, 1.0);
    auto nu1 = BoundedMeasure::dirac(0.5, 1.0);
    const double t = 0.5;
    RandomSource rng(311, 0);
    const int reps = 4000;
    std::vector<double> residuals;
    for (int r = 0; r < reps; ++r) {
        auto traj = simulate_gfvi(nu0, nu1, AtomicProbabilityMeasure::uniform(), t, rng);
        double integral = 0.0, prev_t = 0.0;
        AtomicProbabilityMeasure z = traj.initial;
        for (const auto& e : traj.events) {
            integral += gfvi_generator_apply(product, 2, z, nu0, nu1) * (e.time - prev_t);
            prev_t = e.time;
            z = gfvi_step(z, e);
        }
        integral += gfvi_generator_apply(product, 2, z, nu0, nu1) * (t - prev_t);
        residuals.push_back(moment_functional(product, 2, traj.final_state) -
                            moment_functional(product, 2, traj.initial) - integral);
    }
    auto s = mean_se(residuals);
    CHECK(std::abs(s.mean) < 4 * s.se);
}

TEST_CASE("duality check against the analytic pure-immigration case") {
    // Lambda_0 = delta_1, Lambda_1 = 0: Pi(t) jumps once to the whole set at
    // an Exp(1) time, so E[Phi_id] = P[no jump] * 1/2 = e^{-1} / 2
    MParams m{BoundedMeasure::dirac(1.0, 1.0), BoundedMeasure::zero()};
    auto id = [](const std::vector<double>& xs) { return xs[0]; };
    auto rep = duality_check(m, 1, id, 1.0, 4000, 313);
    double target = 0.5 * std::exp(-1.0);
    CHECK(std::abs(rep.lhs_mean - target) < 4 * rep.lhs_se);
    CHECK(std::abs(rep.rhs_mean - target) < 4 * rep.rhs_se);
    CHECK(std::abs(rep.z_score) < 4.0);
    CHECK(rep.replicas == 4000);

    MParams bad{BoundedMeasure::zero(), BoundedMeasure::uniform(1.0)};
    CHECK_THROWS(duality_check(bad, 1, id, 1.0, 10, 1));
    CHECK_THROWS(duality_check(m, 1, id, 1.0, 1, 1));
}

TEST_CASE("duality check with both measures active") {
    MParams m{BoundedMeasure::dirac(0.5, 0.5), BoundedMeasure::dirac(0.5, 1.0)};
    auto rep = duality_check(m, 2, product, 0.5, 4000, 317);
    CHECK(std::abs(rep.z_score) < 4.0);
}
