#include <doctest.h>

#include <set>

#include "ncchaos/errors.hpp"
#include "ncchaos/ncpart.hpp"
#include "oracles.hpp"

using namespace ncchaos;

TEST_CASE("catalan numbers") {
    const long expected[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (int m = 0; m <= 10; ++m) CHECK(catalan(m) == expected[m]);
    CHECK(catalan(14) == 2674440L);
    CHECK_THROWS_AS(catalan(-1), DomainError);
}

TEST_CASE("non-crossing predicate") {
    CHECK_FALSE(is_noncrossing(SetPartition::make(4, {{1, 3}, {2, 4}})));
    CHECK(is_noncrossing(SetPartition::make(4, {{1, 4}, {2, 3}})));
    CHECK(is_noncrossing(SetPartition::make(4, {{1, 2, 3, 4}})));
    CHECK_FALSE(is_noncrossing(SetPartition::make(6, {{1, 3, 5}, {2, 6}, {4}})));

    CHECK_THROWS_AS(SetPartition::make(4, {{1, 2}, {2, 3, 4}}), ValidationError);
    CHECK_THROWS_AS(SetPartition::make(4, {{1, 2}}), ValidationError);
    CHECK_THROWS_AS(SetPartition::make(4, {{1, 2}, {3, 4, 5}}), ValidationError);
    CHECK_THROWS_AS(SetPartition::make(3, {{1, 2}, {3}, {}}), ValidationError);
}

TEST_CASE("enumeration counts match catalan") {
    for (int n = 1; n <= 10; ++n)
        CHECK(catalan(n) == static_cast<long>(enumerate_nc(n).size()));
    CHECK(enumerate_nc(1).size() == 1);
    CHECK(enumerate_nc(3).size() == 5);
    CHECK(enumerate_nc(4).size() == 14);
}

TEST_CASE("enumeration is canonical, lexicographic and duplicate-free") {
    auto list = enumerate_nc(6);
    std::set<std::vector<std::vector<int>>> seen;
    std::vector<std::vector<int>> prev;
    for (const auto& p : list) {
        for (const auto& b : p.inner.blocks) CHECK(std::is_sorted(b.begin(), b.end()));
        for (std::size_t i = 1; i < p.inner.blocks.size(); ++i)
            CHECK(p.inner.blocks[i - 1].front() < p.inner.blocks[i].front());
        if (!prev.empty()) CHECK(prev < p.inner.blocks);
        prev = p.inner.blocks;
        seen.insert(p.inner.blocks);
    }
    CHECK(seen.size() == list.size());
}

TEST_CASE("exhaustive agreement with the filtered set-partition oracle") {
    for (int n = 1; n <= 6; ++n) {
        std::set<std::vector<std::vector<int>>> filtered;
        int crossing = 0;
        for (const auto& p : testing::all_set_partitions(n)) {
            if (is_noncrossing(p)) filtered.insert(p.blocks);
            else ++crossing;
        }
        auto enumerated = enumerate_nc(n);
        CHECK(filtered.size() == enumerated.size());
        for (const auto& p : enumerated) CHECK(filtered.count(p.inner.blocks) == 1);
        // every partition not in the list fails the predicate by construction
        if (n >= 4) CHECK(crossing > 0);
    }
}

TEST_CASE("non-crossing pairings") {
    CHECK(enumerate_nc2(3).empty());
    CHECK(enumerate_nc2(4).size() == 2);
    CHECK(enumerate_nc2(6).size() == 5);
    for (int k = 1; k <= 5; ++k)
        CHECK(catalan(k) == static_cast<long>(enumerate_nc2(2 * k).size()));
    for (const auto& p : enumerate_nc2(8)) {
        CHECK(is_noncrossing(p.inner));
        for (const auto& b : p.inner.blocks) CHECK(b.size() == 2);
    }
}

TEST_CASE("singleton-free block counts") {
    CHECK(count_nc_no_singleton(4, 1) == 1);
    CHECK(count_nc_no_singleton(4, 2) == 2);
    CHECK(count_nc_no_singleton(3, 2) == 0);
    CHECK(count_nc_no_singleton(3, 1) == 1);

    // Riordan totals against the filtered oracle
    for (int m = 1; m <= 10; ++m) {
        long long viaCounts = 0;
        for (int j = 1; j <= m; ++j) viaCounts += count_nc_no_singleton(m, j);
        long long viaOracle = 0;
        for (const auto& p : testing::all_set_partitions(m))
            if (!p.has_singleton() && is_noncrossing(p)) ++viaOracle;
        CHECK(viaCounts == viaOracle);
    }
}

TEST_CASE("caps and validation") {
    CHECK_THROWS_AS(enumerate_nc(15), ResourceError);
    CHECK_THROWS_AS(enumerate_nc(8, 6), ResourceError);
    CHECK_THROWS_AS(enumerate_nc(0), DomainError);
    CHECK_THROWS_AS(NCPartition::make(SetPartition::make(4, {{1, 3}, {2, 4}})), ValidationError);
    CHECK(NCPartition::make(SetPartition::make(4, {{1, 4}, {2, 3}})).inner.block_count() == 2);
}
