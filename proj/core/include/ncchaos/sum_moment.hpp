#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ncchaos/freelaw.hpp"
#include "ncchaos/kernel.hpp"
#include "ncchaos/polynomial.hpp"

namespace ncchaos {

inline constexpr std::uint64_t kDefaultTupleBudget = 100'000'000;

// Q_N^{(h)}(f; x) = sum f(i_1..i_d) U_{h_1}(x_{i_1}) ... U_{h_d}(x_{i_d}).
// Requires a mirror-symmetric, diagonal-free, unit-variance kernel and a
// palindromic order vector.
struct ChebyshevSumSpec {
    Kernel kernel;
    std::vector<int> orders;

    ChebyshevSumSpec(Kernel kernel, std::vector<int> orders);
    int degree() const { return kernel.d; }
};

struct SumMomentOptions {
    std::uint64_t tuple_budget = kDefaultTupleBudget;
    int threads = 0;       // 0 = NCCHAOS_THREADS env or hardware concurrency
    bool use_cache = true; // pattern memoization (off only for tests)
    double variance_tolerance = 1e-9;
};

struct SumMomentResult {
    double value = 0.0;
    bool exact = true; // pattern values computed in exact arithmetic
    std::uint64_t patterns_evaluated = 0;
    std::uint64_t tuples_visited = 0;
};

// phi( prod_j Q^{(j)}(X)^{m_j} ) for i.i.d. inputs X_i ~ input_law, by direct
// summation over kernel-entry tuples. phi of each summand depends only on the
// index-collision pattern of the tuple, which is memoized; accumulation order
// is fixed so results are identical for every thread count.
SumMomentResult sum_joint_moment(const std::vector<std::pair<ChebyshevSumSpec, int>>& specs,
                                 const FreeLaw& input_law, const SumMomentOptions& opts = {});

// Same sum with every transform replaced by the identity polynomial
// (plain homogeneous sum in the law's variables); the Y side of the
// Lindeberg comparison.
SumMomentResult sum_joint_moment_identity(const std::vector<std::pair<ChebyshevSumSpec, int>>& specs,
                                          const FreeLaw& input_law,
                                          const SumMomentOptions& opts = {});

} // namespace ncchaos
