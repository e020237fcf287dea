#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncchaos/kernel.hpp"
#include "ncchaos/rng.hpp"

namespace ncchaos {

struct ReferenceCheck {
    std::string name;
    bool pass = false;
    std::string detail; // measured values on failure, brief summary on success
    double ms = 0.0;
};

// The built-in verification battery behind the `paper-suite` CLI command:
// contraction and influence worked examples, exact moment identities, the
// lifted-contraction proposition suite, and the iterated Cauchy-Schwarz
// plans/inequality. Deterministic given the seed.
std::vector<ReferenceCheck> run_reference_suite(std::uint64_t seed);

// randomized kernel generators shared with the property tests
Kernel random_mirror_kernel(Rng& rng, int d, int N, bool diagonal_free = true);
Kernel random_symmetric_kernel(Rng& rng, int d, int N); // fully symmetric, diagonal-free
Kernel random_any_kernel(Rng& rng, int d, int N);       // no symmetry constraints
std::vector<int> random_palindromic_orders(Rng& rng, int d, int max_order);

} // namespace ncchaos
