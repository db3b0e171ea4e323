#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mcoal/measure.hpp"
#include "mcoal/paintbox.hpp"
#include "mcoal/partition.hpp"
#include "mcoal/rng.hpp"

namespace mcoal {

/// Piecewise-constant coalescent path: (jump time, partition) pairs with
/// strictly increasing times and strictly coarsening partitions.
struct CoalescentTrajectory {
    int n = 0;
    DistinguishedPartition initial = DistinguishedPartition::singletons(0);
    std::vector<std::pair<double, DistinguishedPartition>> events;
    bool absorbed = false;  // reached the one-block partition before the horizon
    double horizon = 0.0;

    const DistinguishedPartition& state_at(double t) const;
    const DistinguishedPartition& final_state() const {
        return events.empty() ? initial : events.back().second;
    }
};

/// c0, c1 Kingman parts plus a finite mixture nu^0 = sum w_i delta_{s_i}.
struct GeneralCoagulationSpec {
    double c0 = 0.0;
    double c1 = 0.0;
    std::vector<std::pair<DistinguishedMassPartition, double>> mixture;
};

/// Run until absorption when no horizon is given.
using Horizon = std::optional<double>;

/// Aggregated-rate Gillespie chain with the exact M-coalescent jump rates:
/// each k-subset of the b non-distinguished blocks merges at rate
/// lambda_{b,k} (k >= 2) or joins block 0 at rate r_{b,k} (k >= 1).
CoalescentTrajectory simulate_m_coalescent(const MParams& m, int n,
                                           const DistinguishedPartition& start, Horizon horizon,
                                           RandomSource& rng);

/// Poissonian construction for a finite-mixture coagulation measure
/// (c0 = c1 = 0): atoms at rate sum(w_i), each applying the coag of an
/// s_i-paint-box over the current block indices.
CoalescentTrajectory simulate_poissonian(const GeneralCoagulationSpec& spec, int n,
                                         Horizon horizon, RandomSource& rng);

/// Coin-flip Poissonian construction for M with finite nu_0, nu_1: at a
/// nu_1-atom x every non-distinguished block flips heads with probability x
/// and the heads merge; at a nu_0-atom they join block 0 instead.
/// Agrees in law with simulate_m_coalescent.
CoalescentTrajectory simulate_simple_poissonian(const MParams& m, int n, Horizon horizon,
                                                RandomSource& rng);

/// Generator of the restriction: L*F(pi) = sum over subsets I (|I| >= 2) of
/// lambda_{b,|I|} (F(c_I pi) - F(pi)) + sum over J (|J| >= 1) of
/// r_{b,|J|} (F(c^J pi) - F(pi)); subset enumeration, capped at b <= 12.
double generator_apply(const std::function<double(const DistinguishedPartition&)>& F,
                       const DistinguishedPartition& pi, const MParams& m);

/// (time, number of non-distinguished blocks) along the trajectory,
/// starting at time 0.
std::vector<std::pair<double, int>> block_count_path(const CoalescentTrajectory& traj);

/// First time the partition is the whole set, if reached.
std::optional<double> fixation_time(const CoalescentTrajectory& traj);

}  // namespace mcoal
