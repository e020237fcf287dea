#pragma once

#include <map>
#include <vector>

#include "ncchaos/freelaw.hpp"
#include "ncchaos/polynomial.hpp"
#include "ncchaos/rational.hpp"

namespace ncchaos {

// Guard on the total degree of an expanded pure word. The evaluator is a
// memoized recursion, so this protects time, not correctness.
inline constexpr int kWordDegreeCap = 24;

// One factor P(X_var) of a word.
struct Letter {
    int var = 0;
    IntPolynomial transform = IntPolynomial::x();
};

struct Word {
    std::vector<Letter> letters;

    static Word plain(const std::vector<int>& vars); // identity transforms
    int size() const { return static_cast<int>(letters.size()); }
};

// Freely independent variables var -> law.
struct VariableFamily {
    std::map<int, FreeLaw> laws;

    static VariableFamily iid(const FreeLaw& law, int count); // vars 0..count-1
    const FreeLaw& law_of(int var) const;
    bool all_exact() const;
};

struct MomentValue {
    bool exact = true;
    Rational value_q; // valid when exact
    double value_d = 0.0;
};

// phi(P_1(X_{i_1}) ... P_k(X_{i_k})): expands the transforms into monomials
// and evaluates each pure word as the sum over monochromatic non-crossing
// partitions of block-wise free cumulants (mixed free cumulants vanish).
MomentValue word_moment(const VariableFamily& fam, const Word& w);

// Same value by an independent algorithm: center every letter, expand, and
// use the vanishing of alternating centered products; bottoms out on
// single-family words via moments_from_cumulants.
MomentValue word_moment_recursive(const VariableFamily& fam, const Word& w);

// Wick formula for a semicircular family with the given covariance:
// sum over non-crossing pairings of products of covariances. Zero for odd
// length. Positive semidefiniteness of `covariance` is not enforced.
Rational wick_moment(const std::vector<std::vector<Rational>>& covariance,
                     const std::vector<int>& indices);

} // namespace ncchaos
