#include "mcoal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcoal {

namespace {

// Regularized lower incomplete gamma P(a, x): series for x < a + 1,
// continued fraction (Lentz) otherwise.
double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - lg) * h;
}

}  // namespace

MeanSe mean_se(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("mean_se: need at least 2 samples");
    MeanSe out;
    out.n = static_cast<int>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / out.n;
    double sq = 0.0;
    for (double x : xs) sq += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(sq / (out.n - 1.0) / out.n);
    return out;
}

double chi_square_sf(double statistic, int df) {
    if (df < 1) throw std::invalid_argument("chi_square_sf: df must be >= 1");
    if (statistic <= 0.0) return 1.0;
    return 1.0 - gamma_p(0.5 * df, 0.5 * statistic);
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected, double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    // pool sparse cells into one trailing bucket
    std::vector<double> obs, exp;
    double pooled_o = 0.0, pooled_e = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] < min_expected) {
            pooled_o += observed[i];
            pooled_e += expected[i];
        } else {
            obs.push_back(observed[i]);
            exp.push_back(expected[i]);
        }
    }
    if (pooled_e > 0.0) {
        obs.push_back(pooled_o);
        exp.push_back(pooled_e);
    }
    ChiSquareResult res;
    res.df = static_cast<int>(obs.size()) - 1;
    if (res.df < 1) {
        res.p_value = 1.0;
        return res;
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
        double d = obs[i] - exp[i];
        res.statistic += d * d / exp[i];
    }
    res.p_value = chi_square_sf(res.statistic, res.df);
    return res;
}

ChiSquareResult chi_square_two_sample(const std::vector<std::pair<long long, long long>>& counts,
                                      double min_expected) {
    double na = 0.0, nb = 0.0;
    for (const auto& [a, b] : counts) {
        na += a;
        nb += b;
    }
    if (!(na > 0.0 && nb > 0.0))
        throw std::invalid_argument("chi_square_two_sample: empty sample");
    const double total = na + nb;

    // merge labels whose pooled expected count under homogeneity is sparse
    std::vector<std::pair<double, double>> cells;
    double pa = 0.0, pb = 0.0;
    for (const auto& [a, b] : counts) {
        double row = a + b;
        if (row * std::min(na, nb) / total < min_expected) {
            pa += a;
            pb += b;
        } else {
            cells.emplace_back(a, b);
        }
    }
    if (pa + pb > 0.0) cells.emplace_back(pa, pb);

    ChiSquareResult res;
    res.df = static_cast<int>(cells.size()) - 1;
    if (res.df < 1) {
        res.p_value = 1.0;
        return res;
    }
    for (const auto& [a, b] : cells) {
        double row = a + b;
        double ea = row * na / total, eb = row * nb / total;
        res.statistic += (a - ea) * (a - ea) / ea + (b - eb) * (b - eb) / eb;
    }
    res.p_value = chi_square_sf(res.statistic, res.df);
    return res;
}

}  // namespace mcoal
