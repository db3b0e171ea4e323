#pragma once

#include <string>
#include <vector>

#include "mcoal/partition.hpp"
#include "mcoal/rng.hpp"

namespace mcoal {

/// Distinguished mass-partition (s0; s1 >= s2 >= ... ), sum <= 1, with dust
/// delta = 1 - s0 - sum(tail). Finite tail only: the coalescents built on
/// top of this (simple ones and finite mixtures) never need more.
class DistinguishedMassPartition {
public:
    DistinguishedMassPartition(double s0, std::vector<double> tail);

    double s0() const { return s0_; }
    const std::vector<double>& tail() const { return tail_; }
    double dust() const { return dust_; }

    /// Text form `s0;s1,s2,...` (dust implicit).
    std::string to_string() const;
    static DistinguishedMassPartition parse(const std::string& text);

private:
    double s0_;
    std::vector<double> tail_;
    double dust_;
};

/// s-distinguished paint-box on {0,...,n}: X_0 = 0, X_1..X_n i.i.d. with
/// P[X=k] = s_k and P[X=dust] = delta; i ~ j iff X_i = X_j != dust.
DistinguishedPartition sample_paintbox(const DistinguishedMassPartition& s, int n,
                                       RandomSource& rng);

/// Interval-representation sampler (uniforms against the interval layout
/// A_i = [s0+...+s_{i-1}, s0+...+s_i)). Same law as sample_paintbox;
/// kept as an independent route for cross-validation.
DistinguishedPartition sample_paintbox_intervals(const DistinguishedMassPartition& s, int n,
                                                 RandomSource& rng);

/// rho^0_s(1,...,q are singletons) = dust^q.
double singleton_probability(const DistinguishedMassPartition& s, int q);

/// rho^0_s(0 is a singleton): 0 when s0 > 0, 1 otherwise.
double zero_singleton_probability(const DistinguishedMassPartition& s);

}  // namespace mcoal
