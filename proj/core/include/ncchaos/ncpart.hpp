#pragma once

#include <functional>
#include <vector>

#include "ncchaos/rational.hpp"

namespace ncchaos {

inline constexpr int kDefaultNcCap = 14; // C_14 ~= 2.7M partitions

// Partition of [n] = {1..n} in canonical form: blocks sorted by minimum,
// elements strictly increasing within each block.
struct SetPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    // Validates (disjoint, nonempty, covering [n]) and canonicalizes.
    static SetPartition make(int n, std::vector<std::vector<int>> blocks);

    int block_count() const { return static_cast<int>(blocks.size()); }
    bool has_singleton() const;
    bool operator==(const SetPartition&) const = default;
};

// true iff no i<j<k<l with i~k, j~l, j!~k
bool is_noncrossing(const SetPartition& p);

struct NCPartition {
    SetPartition inner;

    // Validates the non-crossing predicate.
    static NCPartition make(SetPartition p);
    bool operator==(const NCPartition&) const = default;
};

// Visit every non-crossing partition of [n] in lexicographic canonical order.
// The callback receives a canonical block list valid only during the call.
void for_each_nc(int n, const std::function<void(const std::vector<std::vector<int>>&)>& visit,
                 int cap = kDefaultNcCap);

// Same, restricted to pairings (all blocks of size 2). No-op for odd n.
void for_each_nc2(int n, const std::function<void(const std::vector<std::vector<int>>&)>& visit,
                  int cap = 2 * kDefaultNcCap);

std::vector<NCPartition> enumerate_nc(int n, int cap = kDefaultNcCap);
std::vector<NCPartition> enumerate_nc2(int n, int cap = 2 * kDefaultNcCap);

// R_{m,j}: non-crossing partitions of [m] with no singleton block and exactly
// j blocks (the free-Poisson moment coefficients).
long long count_nc_no_singleton(int m, int j, int cap = kDefaultNcCap);

// C_m = binom(2m, m) / (m+1), exact.
BigInt catalan(int m);

} // namespace ncchaos
