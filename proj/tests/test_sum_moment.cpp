#include <doctest.h>

#include <cmath>

#include "ncchaos/errors.hpp"
#include "ncchaos/sum_moment.hpp"
#include "ncchaos/words.hpp"
#include "oracles.hpp"

using namespace ncchaos;

namespace {

// direct tuple sum through the word engine, no pattern machinery
double sum_moment_direct(const ChebyshevSumSpec& spec, const FreeLaw& law, int m) {
    std::vector<std::pair<Index, double>> entries(spec.kernel.entries.begin(),
                                                  spec.kernel.entries.end());
    const int d = spec.kernel.d;
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    VariableFamily fam = VariableFamily::iid(law, spec.kernel.N);
    double acc = 0.0;
    for (;;) {
        double coeff = 1.0;
        Word w;
        for (std::size_t s = 0; s < pick.size(); ++s) {
            const auto& [idx, v] = entries[pick[s]];
            coeff *= v;
            for (int l = 0; l < d; ++l)
                w.letters.push_back(
                    Letter{idx[static_cast<std::size_t>(l)] - 1, cheb_u(spec.orders[static_cast<std::size_t>(l)])});
        }
        acc += coeff * word_moment(fam, w).value_d;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == entries.size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return acc;
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(ChebyshevSumSpec(kernel_family("offdiag-constant", 5), {1, 1}), DomainError);
    CHECK_THROWS_AS(ChebyshevSumSpec(kernel_family("example2", 5), {1, 2}), DomainError);
    CHECK_THROWS_AS(ChebyshevSumSpec(kernel_family("example2", 5), {1}), DomainError);
    Kernel nonMirror(2, 4);
    nonMirror.set({1, 2}, 1.0);
    CHECK_THROWS_AS(ChebyshevSumSpec(nonMirror, {1, 1}), DomainError);
}

TEST_CASE("first moment vanishes, second is the variance for every admissible law") {
    for (int N : {4, 6}) {
        ChebyshevSumSpec spec(kernel_family("example2", N), {1, 1});
        for (const char* name : {"semicircular", "free-poisson:1", "bernoulli-sym"}) {
            FreeLaw law = law_from_name(name);
            CHECK(std::fabs(sum_joint_moment({{spec, 1}}, law).value) < 1e-12);
            CHECK(sum_joint_moment({{spec, 2}}, law).value == doctest::Approx(1.0).epsilon(1e-10));
        }
        // orders (2,2) with the float-backed mesokurtic law: still unit variance
        ChebyshevSumSpec spec22(kernel_family("example2", N), {2, 2});
        FreeLaw meso = scale(free_convolve(free_poisson_centered(1), bernoulli_symmetric()),
                             1.0 / std::sqrt(2.0));
        SumMomentResult r = sum_joint_moment({{spec22, 2}}, meso);
        CHECK_FALSE(r.exact);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("fourth moments agree with the direct tuple evaluation") {
    FreeLaw s = semicircular(1);
    for (int N : {3, 4}) {
        ChebyshevSumSpec spec(kernel_family("example2", N), {1, 1});
        SumMomentResult fast = sum_joint_moment({{spec, 3}}, s);
        CHECK(fast.value == doctest::Approx(sum_moment_direct(spec, s, 3)).epsilon(1e-12));
    }
    ChebyshevSumSpec pairs(kernel_family("disjoint-pairs", 6), {2, 2});
    FreeLaw z = free_poisson_centered(1);
    CHECK(sum_joint_moment({{pairs, 4}}, z).value ==
          doctest::Approx(sum_moment_direct(pairs, z, 4)).epsilon(1e-12));
}

TEST_CASE("worked fourth moments") {
    FreeLaw s = semicircular(1);
    // constant off-diagonal kernel: 2 + (N-2)^2/(N(N-1)) + 1/N, exact small-N values
    ChebyshevSumSpec n4(kernel_family("example2", 4), {1, 1});
    CHECK(sum_joint_moment({{n4, 4}}, s).value == doctest::Approx(31.0 / 12).epsilon(1e-12));
    ChebyshevSumSpec n5(kernel_family("example2", 5), {1, 1});
    CHECK(sum_joint_moment({{n5, 4}}, s).value == doctest::Approx(2.65).epsilon(1e-12));

    // the star kernel is tetilla-distributed at every N: phi(Q^4) = 5/2
    VariableFamily fam = VariableFamily::iid(s, 2);
    Rational tetilla(0);
    for (int a = 0; a < 16; ++a) {
        std::vector<int> vars;
        for (int p = 0; p < 4; ++p) {
            if (a & (1 << p)) {
                vars.push_back(1);
                vars.push_back(0);
            } else {
                vars.push_back(0);
                vars.push_back(1);
            }
        }
        tetilla += word_moment(fam, Word::plain(vars)).value_q;
    }
    tetilla /= 4;
    CHECK(tetilla == Rational(5, 2));
    for (int N : {2, 8, 14}) {
        ChebyshevSumSpec star(kernel_family("star-counterexample", N), {1, 1});
        CHECK(sum_joint_moment({{star, 4}}, s).value ==
              doctest::Approx(tetilla.get_d()).epsilon(1e-10));
    }
}

TEST_CASE("joint products of two different sums") {
    // phi(Q1 Q2) for orthogonal kernels: disjoint pairs vs star share no
    // support overlap pattern with nonzero phi except mirrored pairs
    FreeLaw s = semicircular(1);
    ChebyshevSumSpec a(kernel_family("disjoint-pairs", 6), {1, 1});
    ChebyshevSumSpec b(kernel_family("example2", 6), {1, 1});
    double mixed = sum_joint_moment({{a, 1}, {b, 1}}, s).value;
    // <f_a, f_b> since second moments are the kernel inner product
    double inner = 0.0;
    for (const auto& [idx, v] : a.kernel.entries) inner += v * b.kernel.at(idx);
    CHECK(mixed == doctest::Approx(inner).epsilon(1e-12));
}

TEST_CASE("pattern cache is exact and results are thread-count independent") {
    FreeLaw z = free_poisson_centered(1);
    ChebyshevSumSpec spec(kernel_family("example2", 5), {1, 1});
    SumMomentOptions cached;
    cached.threads = 1;
    SumMomentOptions uncached;
    uncached.use_cache = false;
    SumMomentOptions parallel;
    parallel.threads = 3;
    SumMomentResult a = sum_joint_moment({{spec, 4}}, z, cached);
    SumMomentResult b = sum_joint_moment({{spec, 4}}, z, uncached);
    SumMomentResult c = sum_joint_moment({{spec, 4}}, z, parallel);
    CHECK(a.value == b.value); // bitwise
    CHECK(a.value == c.value); // bitwise
    CHECK(a.tuples_visited == 160000);
    CHECK(a.patterns_evaluated > 0);
    CHECK(b.patterns_evaluated == b.tuples_visited);
}

TEST_CASE("budget guard") {
    ChebyshevSumSpec spec(kernel_family("example2", 8), {1, 1});
    SumMomentOptions opts;
    opts.tuple_budget = 1000;
    CHECK_THROWS_AS(sum_joint_moment({{spec, 4}}, semicircular(1), opts), ResourceError);
}

TEST_CASE("identity-transform variant drops the orders") {
    // with U_1 letters both evaluators coincide
    FreeLaw z = free_poisson_centered(1);
    ChebyshevSumSpec spec(kernel_family("star-counterexample", 5), {1, 1});
    CHECK(sum_joint_moment({{spec, 3}}, z).value ==
          sum_joint_moment_identity({{spec, 3}}, z).value);

    // with orders (2,2), the identity variant ignores the transforms
    ChebyshevSumSpec spec22(kernel_family("star-counterexample", 5), {2, 2});
    ChebyshevSumSpec spec11(kernel_family("star-counterexample", 5), {1, 1});
    CHECK(sum_joint_moment_identity({{spec22, 4}}, z).value ==
          doctest::Approx(sum_joint_moment({{spec11, 4}}, z).value).epsilon(1e-12));
}
