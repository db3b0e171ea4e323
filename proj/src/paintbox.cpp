#include "mcoal/paintbox.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mcoal {

DistinguishedMassPartition::DistinguishedMassPartition(double s0, std::vector<double> tail)
    : s0_(s0), tail_(std::move(tail)) {
    if (!(s0_ >= 0.0)) throw std::invalid_argument("mass partition: s0 must be >= 0");
    double sum = s0_;
    double prev = 2.0;
    for (double s : tail_) {
        if (!(s >= 0.0)) throw std::invalid_argument("mass partition: negative entry");
        if (s > prev + 1e-15) throw std::invalid_argument("mass partition: tail not non-increasing");
        prev = s;
        sum += s;
    }
    if (sum > 1.0 + 1e-12) throw std::invalid_argument("mass partition: total mass exceeds 1");
    while (!tail_.empty() && tail_.back() == 0.0) tail_.pop_back();
    dust_ = std::max(0.0, 1.0 - sum);
}

std::string DistinguishedMassPartition::to_string() const {
    std::ostringstream out;
    out << s0_ << ';';
    for (std::size_t i = 0; i < tail_.size(); ++i) {
        if (i) out << ',';
        out << tail_[i];
    }
    return out.str();
}

DistinguishedMassPartition DistinguishedMassPartition::parse(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("mass partition parse: expected `s0;s1,s2,...`");
    double s0 = std::stod(text.substr(0, semi));
    std::vector<double> tail;
    std::stringstream ss(text.substr(semi + 1));
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) tail.push_back(std::stod(tok));
    return DistinguishedMassPartition(s0, std::move(tail));
}

DistinguishedPartition sample_paintbox(const DistinguishedMassPartition& s, int n,
                                       RandomSource& rng) {
    if (n < 0) throw std::invalid_argument("sample_paintbox: n must be >= 0");
    // label k >= 0 means interval k, -1 means dust (singleton)
    std::vector<std::vector<int>> by_label;  // label -> members
    by_label.resize(1 + s.tail().size());
    by_label[0].push_back(0);  // X_0 = 0
    std::vector<std::vector<int>> blocks;
    for (int i = 1; i <= n; ++i) {
        double u = rng.uniform();
        double acc = s.s0();
        if (u < acc) {
            by_label[0].push_back(i);
            continue;
        }
        bool assigned = false;
        for (std::size_t k = 0; k < s.tail().size(); ++k) {
            acc += s.tail()[k];
            if (u < acc) {
                by_label[k + 1].push_back(i);
                assigned = true;
                break;
            }
        }
        if (!assigned) blocks.push_back({i});  // dust singleton
    }
    for (auto& b : by_label)
        if (!b.empty()) blocks.push_back(std::move(b));
    return DistinguishedPartition::from_blocks(n, std::move(blocks));
}

DistinguishedPartition sample_paintbox_intervals(const DistinguishedMassPartition& s, int n,
                                                 RandomSource& rng) {
    if (n < 0) throw std::invalid_argument("sample_paintbox: n must be >= 0");
    std::vector<double> cuts;  // interval boundaries s0, s0+s1, ...
    cuts.push_back(s.s0());
    for (double m : s.tail()) cuts.push_back(cuts.back() + m);
    std::vector<std::vector<int>> by_label(cuts.size());
    by_label[0].push_back(0);  // U_0 = 0 lies in A_0 = [0, s0] by convention
    std::vector<std::vector<int>> blocks;
    for (int i = 1; i <= n; ++i) {
        double u = rng.uniform();
        auto it = std::upper_bound(cuts.begin(), cuts.end(), u);
        if (it == cuts.end()) {
            blocks.push_back({i});  // dust
        } else {
            std::size_t k = static_cast<std::size_t>(it - cuts.begin());
            // zero-length intervals can never catch a uniform, consistent
            // with the categorical route
            by_label[k].push_back(i);
        }
    }
    for (auto& b : by_label)
        if (!b.empty()) blocks.push_back(std::move(b));
    return DistinguishedPartition::from_blocks(n, std::move(blocks));
}

double singleton_probability(const DistinguishedMassPartition& s, int q) {
    if (q < 0) throw std::invalid_argument("singleton_probability: q must be >= 0");
    if (q == 0) return 1.0;
    return std::pow(s.dust(), q);
}

double zero_singleton_probability(const DistinguishedMassPartition& s) {
    return s.s0() > 0.0 ? 0.0 : 1.0;
}

}  // namespace mcoal
