#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace ncchaos {

inline constexpr std::size_t kDefaultDenseCap = 10'000'000; // N^m guard for materialization

using Index = std::vector<std::int32_t>; // 1-based index tuple

// Discrete kernel f : [N]^d -> R, sparse; absent tuples are 0.
// The ordered entry map fixes the iteration order, so every contraction and
// norm accumulates in a deterministic sequence.
struct Kernel {
    int d = 0;
    int N = 0;
    std::map<Index, double> entries;

    Kernel() = default;
    Kernel(int d, int N) : d(d), N(N) {}

    void set(Index idx, double value); // value 0 erases
    double at(const Index& idx) const;
    std::size_t nnz() const { return entries.size(); }

    double variance() const; // sum f^2
    double norm() const;
};

struct ValidationReport {
    bool mirror = false;
    bool diagonal_free = false;
    double variance = 0.0;
};

// Checks mirror symmetry f(i1..id) = f(id..i1), vanishing on diagonals, and
// reports the variance. Never throws.
ValidationReport validate(const Kernel& f);

// Inf_i(f) = sum over axis positions l and entries with i in slot l of f^2.
double influence(const Kernel& f, int i);
std::vector<double> influence_profile(const Kernel& f); // index 0 -> i=1
double tau(const Kernel& f);                            // max_i Inf_i

// Contraction of order q: sums the last q slots of f against the reversed
// first q slots of g. q=0 is the outer product; q=d a scalar (arity 0).
Kernel contract(const Kernel& f, const Kernel& g, int q);
Kernel contract(const Kernel& f, int q);

// Star contraction f *_r^{r-1} g with the shared slot gamma kept free;
// output arity 2(d-r)+1.
Kernel star_contract(const Kernel& f, const Kernel& g, int r);
Kernel star_contract(const Kernel& f, int r);

Kernel kernel_difference(const Kernel& a, const Kernel& b);
double max_abs_difference(const Kernel& a, const Kernel& b);

// k_N = sum f(i1..id) e_{i1}^{x h1} x ... x e_{id}^{x hd}, kept implicit.
// Orders must be palindromic (h_i = h_{d-i+1}).
struct LiftedKernel {
    Kernel base;
    std::vector<int> orders;
    int m = 0; // h_1 + ... + h_d

    LiftedKernel(Kernel base, std::vector<int> orders);
};

// ||k ~r~ k|| for r in 1..m-1 via the block dichotomy: a contraction norm of
// the base kernel when r hits a block boundary, a star-contraction norm when
// r falls strictly inside a block. Never materializes the tensor.
double lifted_contraction_norm(const LiftedKernel& k, int r);

// ||k ~m/2~ k - k|| (m even); reduces to ||f ~d/2~ f - f|| for even d and to
// ||f *_{(d+1)/2}^{(d-1)/2} f - f|| for odd d.
double lifted_midpoint_defect(const LiftedKernel& k);

// Explicit arity-m kernel with f(i1..id) placed on the expanded tuples.
// Test oracle for the two lifted operations; guarded by N^m <= dense_cap.
Kernel materialize_tensor(const LiftedKernel& k, std::size_t dense_cap = kDefaultDenseCap);

// Built-in generators: "example1" | "example2" | "example3" (influence
// examples), "offdiag-constant" (contraction table example),
// "star-counterexample" (same kernel as example1), "disjoint-pairs".
Kernel kernel_family(std::string_view name, int N);
std::vector<std::string> kernel_family_names();

// {"d": int, "N": int, "entries": [{"idx": [..], "val": v}, ...]}
Kernel kernel_from_json(const nlohmann::json& j);
nlohmann::json kernel_to_json(const Kernel& f);

} // namespace ncchaos
