#pragma once

#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace mcoal {

/// Partition of {0,...,n} whose block containing 0 is distinguished.
/// Blocks are stored as sorted integer lists, ordered by least element,
/// so the distinguished block is always blocks()[0]. Immutable after
/// construction.
class DistinguishedPartition {
public:
    /// Partition into singletons {0},{1},...,{n}.
    static DistinguishedPartition singletons(int n);
    /// One-block partition {0,...,n}.
    static DistinguishedPartition whole(int n);
    /// Validates and canonicalizes (sorts within blocks and by least element).
    static DistinguishedPartition from_blocks(int n, std::vector<std::vector<int>> blocks);
    /// Parse the canonical text form, e.g. "0,1|2|3,4".
    static DistinguishedPartition parse(const std::string& text);

    int ground_size() const { return n_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& block(std::size_t i) const { return blocks_[i]; }
    /// Index of the block containing element e.
    std::size_t block_of(int e) const;

    bool is_whole() const { return blocks_.size() == 1; }
    bool same(int i, int j) const { return block_of(i) == block_of(j); }

    /// Canonical text form: blocks joined by '|', elements by ','.
    std::string to_string() const;

    bool operator==(const DistinguishedPartition& o) const {
        return n_ == o.n_ && blocks_ == o.blocks_;
    }
    bool operator<(const DistinguishedPartition& o) const {
        return std::tie(n_, blocks_) < std::tie(o.n_, o.blocks_);
    }

private:
    DistinguishedPartition(int n, std::vector<std::vector<int>> blocks)
        : n_(n), blocks_(std::move(blocks)) {}
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
};

/// Permutation of {0,...,n} fixing 0.
class Permutation {
public:
    static Permutation identity(int n);
    /// map[i] = sigma(i); must be a bijection with map[0] == 0.
    static Permutation from_map(std::vector<int> map);
    int size() const { return static_cast<int>(map_.size()) - 1; }
    int operator()(int i) const { return map_[i]; }
    Permutation inverse() const;

private:
    explicit Permutation(std::vector<int> map) : map_(std::move(map)) {}
    std::vector<int> map_;
};

/// Coagulate blocks of pi according to the blocks of pi_prime, which must be
/// a partition of the block indices {0,...,#pi-1} of pi (index 0 being the
/// distinguished block).
DistinguishedPartition coag(const DistinguishedPartition& pi,
                            const DistinguishedPartition& pi_prime);

/// Restriction to {0,...,m}.
DistinguishedPartition restrict_to(const DistinguishedPartition& pi, int m);

/// True iff restrict_to(pi_n, ground of pi_m) == pi_m.
bool compatibility_check(const DistinguishedPartition& pi_m, const DistinguishedPartition& pi_n);

/// Partition with i ~ j iff sigma(i) ~_pi sigma(j).
DistinguishedPartition apply_permutation(const Permutation& sigma, const DistinguishedPartition& pi);

/// Per-block frequency estimates #(block ∩ {1..n})/n, distinguished block
/// first; 0 itself is excluded from every numerator.
std::vector<std::pair<std::size_t, double>> empirical_frequencies(const DistinguishedPartition& pi);

/// All of P^0_n for n <= 8. Test and enumeration utility; Bell-number growth
/// keeps this desk-scale.
std::vector<DistinguishedPartition> enumerate_partitions(int n);

}  // namespace mcoal
