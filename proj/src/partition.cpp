#include "mcoal/partition.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mcoal {

namespace {

void sort_blocks(std::vector<std::vector<int>>& blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
}

}  // namespace

DistinguishedPartition DistinguishedPartition::singletons(int n) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(n + 1);
    for (int i = 0; i <= n; ++i) blocks.push_back({i});
    return DistinguishedPartition(n, std::move(blocks));
}

DistinguishedPartition DistinguishedPartition::whole(int n) {
    std::vector<int> all(n + 1);
    for (int i = 0; i <= n; ++i) all[i] = i;
    return DistinguishedPartition(n, {std::move(all)});
}

DistinguishedPartition DistinguishedPartition::from_blocks(int n,
                                                           std::vector<std::vector<int>> blocks) {
    if (n < 0) throw std::invalid_argument("partition: negative ground size");
    std::vector<char> seen(n + 1, 0);
    std::size_t count = 0;
    for (const auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("partition: empty block");
        for (int e : b) {
            if (e < 0 || e > n) throw std::invalid_argument("partition: element out of range");
            if (seen[e]) throw std::invalid_argument("partition: duplicate element");
            seen[e] = 1;
            ++count;
        }
    }
    if (count != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("partition: blocks do not cover the ground set");
    sort_blocks(blocks);
    return DistinguishedPartition(n, std::move(blocks));
}

DistinguishedPartition DistinguishedPartition::parse(const std::string& text) {
    std::vector<std::vector<int>> blocks;
    std::stringstream ss(text);
    std::string blk;
    int max_elem = -1;
    while (std::getline(ss, blk, '|')) {
        std::vector<int> elems;
        std::stringstream bs(blk);
        std::string tok;
        while (std::getline(bs, tok, ',')) {
            if (tok.empty()) throw std::invalid_argument("partition parse: empty element");
            int e = std::stoi(tok);
            max_elem = std::max(max_elem, e);
            elems.push_back(e);
        }
        if (elems.empty()) throw std::invalid_argument("partition parse: empty block");
        blocks.push_back(std::move(elems));
    }
    return from_blocks(max_elem, std::move(blocks));
}

std::size_t DistinguishedPartition::block_of(int e) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), e)) return i;
    throw std::out_of_range("block_of: element not in ground set");
}

std::string DistinguishedPartition::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) out << '|';
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            if (j) out << ',';
            out << blocks_[i][j];
        }
    }
    return out.str();
}

Permutation Permutation::identity(int n) {
    std::vector<int> map(n + 1);
    for (int i = 0; i <= n; ++i) map[i] = i;
    return Permutation(std::move(map));
}

Permutation Permutation::from_map(std::vector<int> map) {
    if (map.empty() || map[0] != 0)
        throw std::invalid_argument("permutation: must fix 0");
    std::vector<char> seen(map.size(), 0);
    for (int v : map) {
        if (v < 0 || v >= static_cast<int>(map.size()) || seen[v])
            throw std::invalid_argument("permutation: not a bijection");
        seen[v] = 1;
    }
    return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

DistinguishedPartition coag(const DistinguishedPartition& pi,
                            const DistinguishedPartition& pi_prime) {
    if (pi_prime.ground_size() != static_cast<int>(pi.block_count()) - 1)
        throw std::invalid_argument("coag: pi_prime must partition the block indices of pi");
    std::vector<std::vector<int>> merged;
    merged.reserve(pi_prime.block_count());
    for (const auto& idx_block : pi_prime.blocks()) {
        std::vector<int> u;
        for (int j : idx_block)
            u.insert(u.end(), pi.block(j).begin(), pi.block(j).end());
        merged.push_back(std::move(u));
    }
    return DistinguishedPartition::from_blocks(pi.ground_size(), std::move(merged));
}

DistinguishedPartition restrict_to(const DistinguishedPartition& pi, int m) {
    if (m > pi.ground_size()) throw std::invalid_argument("restrict: m exceeds ground size");
    if (m < 0) throw std::invalid_argument("restrict: negative m");
    std::vector<std::vector<int>> blocks;
    for (const auto& b : pi.blocks()) {
        std::vector<int> cut;
        for (int e : b)
            if (e <= m) cut.push_back(e);
        if (!cut.empty()) blocks.push_back(std::move(cut));
    }
    return DistinguishedPartition::from_blocks(m, std::move(blocks));
}

bool compatibility_check(const DistinguishedPartition& pi_m, const DistinguishedPartition& pi_n) {
    if (pi_m.ground_size() > pi_n.ground_size()) return false;
    return restrict_to(pi_n, pi_m.ground_size()) == pi_m;
}

DistinguishedPartition apply_permutation(const Permutation& sigma,
                                         const DistinguishedPartition& pi) {
    if (sigma.size() != pi.ground_size())
        throw std::invalid_argument("apply_permutation: size mismatch");
    Permutation inv = sigma.inverse();
    std::vector<std::vector<int>> blocks;
    blocks.reserve(pi.block_count());
    for (const auto& b : pi.blocks()) {
        std::vector<int> img;
        img.reserve(b.size());
        for (int e : b) img.push_back(inv(e));
        blocks.push_back(std::move(img));
    }
    return DistinguishedPartition::from_blocks(pi.ground_size(), std::move(blocks));
}

std::vector<std::pair<std::size_t, double>> empirical_frequencies(
    const DistinguishedPartition& pi) {
    const int n = pi.ground_size();
    if (n < 1) throw std::invalid_argument("empirical_frequencies: n must be >= 1");
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(pi.block_count());
    for (std::size_t i = 0; i < pi.block_count(); ++i) {
        std::size_t count = pi.block(i).size();
        if (i == 0) --count;  // 0 is excluded from the numerator
        out.emplace_back(i, static_cast<double>(count) / n);
    }
    return out;
}

std::vector<DistinguishedPartition> enumerate_partitions(int n) {
    if (n < 0 || n > 8)
        throw std::invalid_argument("enumerate_partitions: supported for 0 <= n <= 8");
    // Restricted-growth strings over {0,...,n}.
    std::vector<DistinguishedPartition> out;
    std::vector<int> label(n + 1, 0);
    for (;;) {
        int nblocks = *std::max_element(label.begin(), label.end()) + 1;
        std::vector<std::vector<int>> blocks(nblocks);
        for (int e = 0; e <= n; ++e) blocks[label[e]].push_back(e);
        out.push_back(DistinguishedPartition::from_blocks(n, std::move(blocks)));
        // next restricted-growth string
        int i = n;
        for (; i >= 1; --i) {
            int cap = *std::max_element(label.begin(), label.begin() + i) + 1;
            if (label[i] < cap) {
                ++label[i];
                break;
            }
            label[i] = 0;
        }
        if (i == 0) break;
    }
    return out;
}

}  // namespace mcoal
