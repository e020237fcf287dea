#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "ncchaos/errors.hpp"
#include "ncchaos/kernel.hpp"
#include "ncchaos/reference_suite.hpp"
#include "ncchaos/rng.hpp"
#include "oracles.hpp"

using namespace ncchaos;

TEST_CASE("validation report") {
    Kernel f2 = kernel_family("example2", 5);
    ValidationReport rep = validate(f2);
    CHECK(rep.mirror);
    CHECK(rep.diagonal_free);
    CHECK(rep.variance == doctest::Approx(1.0).epsilon(1e-12));

    Kernel bad(2, 3);
    bad.set({1, 2}, 1.0);
    bad.set({2, 1}, 0.5);
    CHECK_FALSE(validate(bad).mirror);

    Kernel diag(2, 3);
    diag.set({1, 1}, 1.0);
    CHECK(validate(diag).mirror);
    CHECK_FALSE(validate(diag).diagonal_free);
}

TEST_CASE("influence profiles of the worked example kernels") {
    for (int N : {6, 9}) {
        Kernel f1 = kernel_family("example1", N);
        CHECK(influence(f1, 1) == doctest::Approx(1.0).epsilon(1e-12));
        for (int j = 2; j <= N; ++j)
            CHECK(influence(f1, j) == doctest::Approx(1.0 / (N - 1)).epsilon(1e-12));
        CHECK(tau(f1) == doctest::Approx(1.0).epsilon(1e-12));

        Kernel f2 = kernel_family("example2", N);
        for (int i = 1; i <= N; ++i)
            CHECK(influence(f2, i) == doctest::Approx(2.0 / N).epsilon(1e-12));

        Kernel f3 = kernel_family("example3", N);
        CHECK(influence(f3, 1) == 0.0);
        CHECK(tau(f3) == doctest::Approx(2.0 / (N - 1)).epsilon(1e-12));

        // unit variance forces sum_i Inf_i = d
        for (const Kernel* f : {&f1, &f2, &f3}) {
            double total = 0.0;
            for (double v : influence_profile(*f)) total += v;
            CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(influence(kernel_family("example2", 4), 5), DomainError);
}

TEST_CASE("contraction worked example") {
    for (int N : {4, 7}) {
        Kernel g = contract(kernel_family("offdiag-constant", N), 1);
        for (int h = 1; h <= N; ++h)
            for (int k = 1; k <= N; ++k) {
                double want = h == k ? static_cast<double>(N - 1) / (N - 2) : 1.0;
                CHECK(g.at({h, k}) == doctest::Approx(want).epsilon(1e-12));
            }
    }
    Kernel c = contract(kernel_family("example2", 5), 1);
    CHECK(c.at({1, 2}) == doctest::Approx(3.0 / 20).epsilon(1e-12));
    CHECK(c.at({3, 3}) == doctest::Approx(1.0 / 5).epsilon(1e-12));
}

TEST_CASE("full contraction equals the variance for mirror kernels") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 1 + static_cast<int>(rng.next_below(3));
        int N = 2 + static_cast<int>(rng.next_below(3));
        Kernel f = random_mirror_kernel(rng, d, N);
        Kernel full = contract(f, d);
        CHECK(full.d == 0);
        CHECK(full.at({}) == doctest::Approx(f.variance()).epsilon(1e-12));
    }
}

TEST_CASE("contractions against the dense direct-summation oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int d = 1 + static_cast<int>(rng.next_below(3));
        int N = 2 + static_cast<int>(rng.next_below(3));
        Kernel f = random_any_kernel(rng, d, N);
        for (int q = 0; q <= d; ++q)
            CHECK(max_abs_difference(contract(f, q), testing::contract_dense(f, f, q)) < 1e-12);
        for (int r = 1; r <= d; ++r)
            CHECK(max_abs_difference(star_contract(f, r), testing::star_contract_dense(f, f, r)) <
                  1e-12);
    }
    CHECK_THROWS_AS(contract(kernel_family("example2", 4), 3), DomainError);
    CHECK_THROWS_AS(star_contract(kernel_family("example2", 4), 0), DomainError);
}

TEST_CASE("star contraction special cases") {
    // d=1, r=1: the square of the kernel entry by entry
    Kernel f(1, 4);
    f.set({2}, 0.5);
    f.set({3}, -2.0);
    Kernel s = star_contract(f, 1);
    CHECK(s.d == 1);
    CHECK(s.at({2}) == doctest::Approx(0.25));
    CHECK(s.at({3}) == doctest::Approx(4.0));

    // arity-3 spot value: f(2,1) f(1,3) for the constant kernel at N=5
    Kernel f2 = kernel_family("example2", 5);
    Kernel s2 = star_contract(f2, 1);
    CHECK(s2.d == 3);
    CHECK(s2.at({2, 1, 3}) == doctest::Approx(1.0 / 20).epsilon(1e-12));
}

TEST_CASE("contraction preserves mirror symmetry") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + static_cast<int>(rng.next_below(2));
        Kernel f = random_mirror_kernel(rng, d, 3);
        for (int q = 0; q <= d; ++q) CHECK(validate(contract(f, q)).mirror);
    }
}

TEST_CASE("lifted dichotomy against the materialized tensor") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 1 + static_cast<int>(rng.next_below(3));
        int N = 2 + static_cast<int>(rng.next_below(4));
        Kernel f = random_mirror_kernel(rng, d, N);
        LiftedKernel lifted(f, random_palindromic_orders(rng, d, 3));
        Kernel g = materialize_tensor(lifted);
        for (int r = 1; r <= lifted.m - 1; ++r)
            CHECK(lifted_contraction_norm(lifted, r) ==
                  doctest::Approx(contract(g, r).norm()).epsilon(1e-10));
        if (lifted.m % 2 == 0)
            CHECK(lifted_midpoint_defect(lifted) ==
                  doctest::Approx(kernel_difference(contract(g, lifted.m / 2), g).norm())
                      .epsilon(1e-10));
    }
}

TEST_CASE("lifted kernel edge cases") {
    Kernel f = kernel_family("example2", 4);
    CHECK_THROWS_AS(LiftedKernel(f, {1, 2}), DomainError); // not palindromic
    CHECK_THROWS_AS(LiftedKernel(f, {1}), DomainError);    // arity mismatch
    LiftedKernel k(f, {2, 2});
    CHECK(k.m == 4);
    CHECK_THROWS_AS(lifted_contraction_norm(k, 0), DomainError);
    CHECK_THROWS_AS(lifted_contraction_norm(k, 4), DomainError);

    LiftedKernel odd(f, {1, 1});
    // identity case: r=1 is the block boundary
    CHECK(lifted_contraction_norm(odd, 1) == doctest::Approx(contract(f, 1).norm()));
    // orders (2,2): r=1 inside the first block, r=2 at the boundary
    CHECK(lifted_contraction_norm(k, 1) == doctest::Approx(star_contract(f, 1).norm()));
    CHECK(lifted_contraction_norm(k, 2) == doctest::Approx(contract(f, 1).norm()));

    Kernel one(1, 3);
    one.set({1}, 1.0);
    LiftedKernel k1(one, {2});
    CHECK(lifted_midpoint_defect(k1) ==
          doctest::Approx(kernel_difference(star_contract(one, 1), one).norm()));
    LiftedKernel k2(one, {3});
    CHECK_THROWS_AS(lifted_midpoint_defect(k2), DomainError); // odd total order
}

TEST_CASE("materialize tensor") {
    Kernel e1(1, 3);
    e1.set({1}, 1.0);
    Kernel t = materialize_tensor(LiftedKernel(e1, {1}));
    CHECK(t.d == 1);
    CHECK(t.at({1}) == 1.0);

    Kernel f = kernel_family("example2", 3);
    Kernel m = materialize_tensor(LiftedKernel(f, {1, 1}));
    CHECK(max_abs_difference(m, f) == 0.0);

    Kernel big = kernel_family("example2", 10);
    CHECK_THROWS_AS(materialize_tensor(LiftedKernel(big, {3, 3}), 1000), ResourceError);
}

TEST_CASE("norm inequalities on random kernels") {
    Rng rng(19);
    const double tol = 1e-10;
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + static_cast<int>(rng.next_below(2));
        int N = 2 + static_cast<int>(rng.next_below(3));
        Kernel any = random_any_kernel(rng, d, N);
        for (int q = 1; q <= d - 1; ++q)
            CHECK(contract(any, q).norm() + tol >= star_contract(any, q + 1).norm());
        Kernel mirror = random_mirror_kernel(rng, d, N, false);
        CHECK(contract(mirror, 1).norm() + tol >= star_contract(mirror, 1).norm());
    }
}

TEST_CASE("influence bounds from the top contraction") {
    Rng rng(23);
    const double tol = 1e-10;
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + static_cast<int>(rng.next_below(2));
        int N = std::max(d, 2 + static_cast<int>(rng.next_below(3)));
        Kernel f = random_symmetric_kernel(rng, d, N);
        CHECK(contract(f, d - 1).norm() + tol >= tau(f) / d);
        if (d == 2)
            CHECK(kernel_difference(contract(f, 1), f).norm() + tol >= tau(f) / 2);
    }
}

TEST_CASE("kernel JSON") {
    Kernel f = kernel_family("example1", 5);
    Kernel back = kernel_from_json(kernel_to_json(f));
    CHECK(back.d == f.d);
    CHECK(back.N == f.N);
    CHECK(max_abs_difference(back, f) == 0.0);

    using nlohmann::json;
    CHECK_THROWS_AS(kernel_from_json(json{{"d", 2}, {"N", 3}}), ValidationError);
    CHECK_THROWS_AS(kernel_from_json(json::parse(
                        R"({"d":2,"N":3,"entries":[{"idx":[1,4],"val":1.0}]})")),
                    ValidationError);
    CHECK_THROWS_AS(kernel_from_json(json::parse(
                        R"({"d":2,"N":3,"entries":[{"idx":[1],"val":1.0}]})")),
                    ValidationError);
    CHECK_THROWS_AS(
        kernel_from_json(json::parse(
            R"({"d":2,"N":3,"entries":[{"idx":[1,2],"val":1.0},{"idx":[1,2],"val":2.0}]})")),
        ValidationError);
}

TEST_CASE("built-in families") {
    for (const auto& name : kernel_family_names()) {
        Kernel f = kernel_family(name, 6);
        ValidationReport rep = validate(f);
        CHECK(rep.mirror);
        CHECK(rep.diagonal_free);
        if (name != "offdiag-constant") CHECK(rep.variance == doctest::Approx(1.0).epsilon(1e-12));
    }
    // star-counterexample and example1 coincide
    CHECK(max_abs_difference(kernel_family("example1", 7), kernel_family("star-counterexample", 7)) ==
          0.0);
    CHECK_THROWS_AS(kernel_family("nope", 5), DomainError);
    CHECK_THROWS_AS(kernel_family("example3", 2), DomainError);
}
