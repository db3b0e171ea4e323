#pragma once

#include <utility>
#include <vector>

namespace mcoal {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    int n = 0;
};
MeanSe mean_se(const std::vector<double>& xs);

/// Upper-tail p-value of a chi-square statistic with df degrees of freedom
/// (regularized incomplete gamma Q(df/2, x/2)).
double chi_square_sf(double statistic, int df);

struct ChiSquareResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
};

/// Goodness of fit of observed counts against expected counts (same order);
/// cells with expected < min_expected are pooled into the last kept cell.
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected, double min_expected = 5.0);

/// Two-sample homogeneity test: counts[i] = (sample-A count, sample-B count)
/// for label i over the union of observed labels; sparse cells (pooled
/// expected < min_expected) are merged into one.
ChiSquareResult chi_square_two_sample(const std::vector<std::pair<long long, long long>>& counts,
                                      double min_expected = 5.0);

}  // namespace mcoal
