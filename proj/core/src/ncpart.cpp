#include "ncchaos/ncpart.hpp"

#include <algorithm>
#include <string>

#include "ncchaos/errors.hpp"

namespace ncchaos {

SetPartition SetPartition::make(int n, std::vector<std::vector<int>> blocks) {
    if (n < 1) throw ValidationError("SetPartition: n must be positive");
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (auto& b : blocks) {
        if (b.empty()) throw ValidationError("SetPartition: empty block");
        std::sort(b.begin(), b.end());
        for (int x : b) {
            if (x < 1 || x > n) throw ValidationError("SetPartition: element out of range: " + std::to_string(x));
            if (seen[static_cast<std::size_t>(x)]) throw ValidationError("SetPartition: repeated element: " + std::to_string(x));
            seen[static_cast<std::size_t>(x)] = 1;
        }
    }
    for (int x = 1; x <= n; ++x) {
        if (!seen[static_cast<std::size_t>(x)]) throw ValidationError("SetPartition: missing element: " + std::to_string(x));
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return SetPartition{n, std::move(blocks)};
}

bool SetPartition::has_singleton() const {
    for (const auto& b : blocks)
        if (b.size() == 1) return true;
    return false;
}

bool is_noncrossing(const SetPartition& p) {
    // block id per element, then look for i<j<k<l with i~k, j~l, j!~k
    std::vector<int> id(static_cast<std::size_t>(p.n) + 1, -1);
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        for (int x : p.blocks[b]) id[static_cast<std::size_t>(x)] = static_cast<int>(b);
    for (int x = 1; x <= p.n; ++x)
        if (id[static_cast<std::size_t>(x)] < 0) throw ValidationError("is_noncrossing: malformed partition");

    for (const auto& block : p.blocks) {
        for (std::size_t t = 0; t + 1 < block.size(); ++t) {
            int i = block[t], k = block[t + 1];
            // an element j strictly inside (i,k) whose block reaches outside [i,k] crosses
            for (int j = i + 1; j < k; ++j) {
                if (id[static_cast<std::size_t>(j)] == id[static_cast<std::size_t>(i)]) continue;
                const auto& other = p.blocks[static_cast<std::size_t>(id[static_cast<std::size_t>(j)])];
                if (other.front() < i || other.back() > k) return false;
            }
        }
    }
    return true;
}

NCPartition NCPartition::make(SetPartition p) {
    if (!is_noncrossing(p)) throw ValidationError("NCPartition: partition has a crossing");
    return NCPartition{std::move(p)};
}

namespace {

using Blocks = std::vector<std::vector<int>>;
using Visitor = std::function<void(const Blocks&)>;

// Non-crossing partitions of pts[lo, hi) in lexicographic canonical order.
// The block of pts[lo] is fixed first (subsets in lexicographic order), which
// splits the remaining points into gaps; non-crossing forces every other
// block inside a single gap, and the gaps are partitioned left to right.
struct NcGen {
    const std::vector<int>& pts;
    Blocks& acc;

    void all(int lo, int hi, const std::function<void()>& cont) {
        if (lo >= hi) {
            cont();
            return;
        }
        acc.emplace_back(1, pts[static_cast<std::size_t>(lo)]);
        std::vector<int> bounds{lo}; // positions of the block's elements
        choose(acc.size() - 1, bounds, lo + 1, hi, cont);
        acc.pop_back();
    }

    // grow the block at blockPos with candidates from [from, hi); closing it
    // before every extension keeps the emission lexicographic
    void choose(std::size_t blockPos, std::vector<int>& bounds, int from, int hi,
                const std::function<void()>& cont) {
        gaps(bounds, 0, hi, cont);
        for (int j = from; j < hi; ++j) {
            acc[blockPos].push_back(pts[static_cast<std::size_t>(j)]);
            bounds.push_back(j);
            choose(blockPos, bounds, j + 1, hi, cont);
            bounds.pop_back();
            acc[blockPos].pop_back();
        }
    }

    void gaps(const std::vector<int>& bounds, std::size_t t, int hi,
              const std::function<void()>& cont) {
        if (t == bounds.size()) {
            cont();
            return;
        }
        int lo = bounds[t] + 1;
        int gapHi = (t + 1 < bounds.size()) ? bounds[t + 1] : hi;
        all(lo, gapHi, [&, t, hi] { gaps(bounds, t + 1, hi, cont); });
    }
};

} // namespace

void for_each_nc(int n, const std::function<void(const Blocks&)>& visit, int cap) {
    if (n < 1) throw DomainError("for_each_nc: n must be positive");
    if (n > cap)
        throw ResourceError("for_each_nc: n=" + std::to_string(n) + " exceeds enumeration cap " +
                            std::to_string(cap));
    std::vector<int> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = i + 1;
    Blocks acc;
    NcGen gen{pts, acc};
    gen.all(0, n, [&] { visit(acc); });
}

namespace {

// Non-crossing pairings: first open point pairs with a partner at odd
// distance; inside and outside are paired independently.
void nc2_rec(std::vector<int>& open, Blocks& acc, const Visitor& visit) {
    if (open.empty()) {
        visit(acc);
        return;
    }
    int first = open.front();
    for (std::size_t j = 1; j < open.size(); j += 2) {
        int partner = open[j];
        acc.push_back({first, partner});
        std::vector<int> inside(open.begin() + 1, open.begin() + static_cast<long>(j));
        std::vector<int> outside(open.begin() + static_cast<long>(j) + 1, open.end());
        // emit inside blocks before outside blocks: canonical order by minimum
        nc2_rec(inside, acc, [&](const Blocks&) { nc2_rec(outside, acc, visit); });
        acc.pop_back();
    }
}

} // namespace

void for_each_nc2(int n, const std::function<void(const Blocks&)>& visit, int cap) {
    if (n < 1) throw DomainError("for_each_nc2: n must be positive");
    if (n > cap)
        throw ResourceError("for_each_nc2: n=" + std::to_string(n) + " exceeds enumeration cap " +
                            std::to_string(cap));
    if (n % 2 != 0) return;
    std::vector<int> open(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) open[static_cast<std::size_t>(i)] = i + 1;
    Blocks acc;
    nc2_rec(open, acc, visit);
}

std::vector<NCPartition> enumerate_nc(int n, int cap) {
    std::vector<NCPartition> out;
    for_each_nc(
        n, [&](const Blocks& blocks) { out.push_back(NCPartition{SetPartition{n, blocks}}); }, cap);
    return out;
}

std::vector<NCPartition> enumerate_nc2(int n, int cap) {
    std::vector<NCPartition> out;
    for_each_nc2(
        n, [&](const Blocks& blocks) { out.push_back(NCPartition{SetPartition{n, blocks}}); }, cap);
    return out;
}

long long count_nc_no_singleton(int m, int j, int cap) {
    if (m < 1) throw DomainError("count_nc_no_singleton: m must be positive");
    if (j < 1 || j > m) throw DomainError("count_nc_no_singleton: j out of range");
    long long count = 0;
    for_each_nc(
        m,
        [&](const Blocks& blocks) {
            if (static_cast<int>(blocks.size()) != j) return;
            for (const auto& b : blocks)
                if (b.size() == 1) return;
            ++count;
        },
        cap);
    return count;
}

BigInt catalan(int m) {
    if (m < 0) throw DomainError("catalan: m must be nonnegative");
    BigInt num;
    mpz_bin_uiui(num.get_mpz_t(), 2UL * static_cast<unsigned long>(m), static_cast<unsigned long>(m));
    return num / (m + 1);
}

} // namespace ncchaos
