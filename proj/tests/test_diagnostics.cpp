#include <doctest.h>

#include <cmath>

#include "ncchaos/diagnostics.hpp"
#include "ncchaos/errors.hpp"
#include "ncchaos/rng.hpp"

using namespace ncchaos;

namespace {

KernelFamily family(const char* name) {
    return [name](int N) { return kernel_family(name, N); };
}

CriterionOptions fast_opts() {
    CriterionOptions opts;
    opts.sum.threads = 2;
    return opts;
}

} // namespace

TEST_CASE("exponent plans reproduce the worked multisets") {
    CHECK(iterated_cs_plan(2).sets == std::vector<std::vector<int>>{{0}, {0}});
    CHECK(iterated_cs_plan(3).sets == std::vector<std::vector<int>>{{0}, {1}, {1}});
    CHECK(iterated_cs_plan(4).sets == std::vector<std::vector<int>>{{1}, {1}, {1}, {1}});
    CHECK(iterated_cs_plan(5).sets == std::vector<std::vector<int>>{{1}, {1}, {2}, {1, 1}, {2}});
    CHECK_THROWS_AS(iterated_cs_plan(1), DomainError);
}

TEST_CASE("exponent plan dyadic constraints up to n = 12") {
    for (int n = 2; n <= 12; ++n) {
        ExponentPlan plan = iterated_cs_plan(n);
        REQUIRE(static_cast<int>(plan.sets.size()) == n);
        for (int l = 1; l <= n; ++l) {
            long long total = 0;
            for (int s : plan.sets[static_cast<std::size_t>(l - 1)]) {
                CHECK(s >= 0);
                total += 1LL << s;
            }
            CHECK(total == exponent_plan_target(n, l));
        }
    }
}

TEST_CASE("trace inequality checks") {
    // identity matrices: both sides are 1
    std::vector<Eigen::MatrixXd> ids(3, Eigen::MatrixXd::Identity(4, 4));
    CsCheckResult res = iterated_cs_check(iterated_cs_plan(3), ids);
    CHECK(res.lhs == doctest::Approx(1.0));
    CHECK(res.rhs == doctest::Approx(1.0));
    CHECK(res.holds);

    // n = 2 is the Cauchy-Schwarz inequality for the trace pairing
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Eigen::MatrixXd> mats;
        for (int i = 0; i < 2; ++i) {
            Eigen::MatrixXd m(4, 4);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) m(a, b) = rng.next_real(-1.0, 1.0);
            mats.push_back(std::move(m));
        }
        CsCheckResult r = iterated_cs_check(iterated_cs_plan(2), mats);
        CHECK(r.holds);
        double direct = std::sqrt((mats[0] * mats[0].transpose()).trace() / 4 *
                                  ((mats[1] * mats[1].transpose()).trace() / 4));
        CHECK(r.rhs == doctest::Approx(direct).epsilon(1e-12));
    }

    // random tuples across lengths
    int violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(5));
        int dim = 2 + static_cast<int>(rng.next_below(5));
        std::vector<Eigen::MatrixXd> mats;
        for (int i = 0; i < n; ++i) {
            Eigen::MatrixXd m(dim, dim);
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) m(a, b) = rng.next_real(-1.0, 1.0);
            mats.push_back(std::move(m));
        }
        if (!iterated_cs_check(iterated_cs_plan(n), mats).holds) ++violations;
    }
    CHECK(violations == 0);

    std::vector<Eigen::MatrixXd> two(2, Eigen::MatrixXd::Identity(4, 4));
    CHECK_THROWS_AS(iterated_cs_check(iterated_cs_plan(3), two), DomainError);
    std::vector<Eigen::MatrixXd> ragged = {Eigen::MatrixXd::Identity(4, 4),
                                           Eigen::MatrixXd::Identity(3, 3)};
    CHECK_THROWS_AS(iterated_cs_check(iterated_cs_plan(2), ragged), DomainError);
}

TEST_CASE("semicircular criterion verdicts") {
    // a single N carries no trend
    auto single = semicircular_criterion(family("example2"), {1, 1}, {6}, fast_opts());
    CHECK(single.verdict == Verdict::Inconclusive);

    // the star family keeps its fourth moment at the tetilla value
    auto star = semicircular_criterion(family("star-counterexample"), {1, 1}, {4, 6, 8, 10},
                                       fast_opts());
    CHECK(star.verdict == Verdict::Inconsistent);
    for (const auto& row : star.rows)
        CHECK(row.fourth_moment == doctest::Approx(2.5).epsilon(1e-10));

    // the constant off-diagonal family drifts toward the free Poisson moments:
    // fourth moments increase inside (2,3) and the contraction norm grows
    auto ex2 = semicircular_criterion(family("example2"), {1, 1}, {4, 5, 6}, fast_opts());
    CHECK(ex2.verdict == Verdict::Inconsistent);
    for (std::size_t i = 0; i < ex2.rows.size(); ++i) {
        CHECK(ex2.rows[i].fourth_moment > 2.0);
        CHECK(ex2.rows[i].fourth_moment < 3.0);
        if (i > 0) {
            CHECK(ex2.rows[i].fourth_moment > ex2.rows[i - 1].fourth_moment);
            CHECK(ex2.rows[i].contraction_norms.at(1) > ex2.rows[i - 1].contraction_norms.at(1));
        }
    }

    // disjoint pairs converge: decreasing fourth moments, vanishing norms
    auto pairs = semicircular_criterion(family("disjoint-pairs"), {1, 1}, {16, 24, 32, 40, 48},
                                        fast_opts());
    CHECK(pairs.verdict == Verdict::SemicircularConsistent);
    CHECK(pairs.rows.back().fourth_moment == doctest::Approx(2.0 + 1.0 / 48).epsilon(1e-10));

    // budget exhaustion flags the report as inconclusive
    CriterionOptions tiny = fast_opts();
    tiny.sum.tuple_budget = 10;
    auto partial = semicircular_criterion(family("example2"), {1, 1}, {4, 5}, tiny);
    CHECK(partial.verdict == Verdict::Inconclusive);
}

TEST_CASE("free poisson criterion") {
    // parity guard: d odd rejected
    Kernel one(1, 3);
    one.set({1}, 1.0);
    KernelFamily oneFam = [one](int) { return one; };
    CHECK_THROWS_AS(free_poisson_criterion(oneFam, {2}, Rational(1), {3}, fast_opts()),
                    DomainError);
    // parity guard: odd total order rejected before any work
    CHECK_THROWS_AS(free_poisson_criterion(family("example2"), {1, 2, 1}, Rational(1), {4},
                                           fast_opts()),
                    DomainError);

    // the constant off-diagonal family satisfies the free Poisson conditions at
    // desk scale: f ~1~ f approaches f and the statistic approaches 2*1-1 = 1
    CriterionOptions opts = fast_opts();
    opts.norm_threshold = 0.45;
    auto rep = free_poisson_criterion(family("example2"), {1, 1}, Rational(1), {4, 5, 6, 7, 8, 9},
                                      opts);
    CHECK(rep.verdict == Verdict::FreePoissonConsistent);
    CHECK(rep.rows.back().moment_statistic == doctest::Approx(1.0).epsilon(0.2));
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        CHECK(*rep.rows[i].midpoint_defect < *rep.rows[i - 1].midpoint_defect);

    // with the strict default thresholds the same sweep is not yet conclusive
    auto strict = free_poisson_criterion(family("example2"), {1, 1}, Rational(1), {4, 5, 6, 7, 8},
                                         fast_opts());
    CHECK(strict.verdict == Verdict::Inconsistent);

    // a far-off lambda fails the variance premise
    auto wrong = free_poisson_criterion(family("example2"), {1, 1}, Rational(3), {4, 5, 6}, opts);
    CHECK(wrong.verdict == Verdict::Inconsistent);
}

TEST_CASE("lindeberg gaps") {
    FreeLaw s = semicircular(1);
    FreeLaw z = free_poisson_centered(1);

    // identical laws: both sides are the same computation
    auto same = lindeberg_gap({{family("example2"), 3}}, {1, 1}, s, s, {4, 5, 6});
    for (const auto& row : same) CHECK(row.gap == 0.0);

    // second moments are law-free
    for (const char* lawName : {"free-poisson:1", "bernoulli-sym"}) {
        auto rows = lindeberg_gap({{family("example2"), 2}}, {1, 1}, s,
                                  law_from_name(lawName), {4, 5, 6, 7, 8});
        for (const auto& row : rows) CHECK(row.gap <= 1e-10);
    }

    // fourth-moment gaps decay like sqrt(tau): the ratio column stays flat
    auto rows = lindeberg_gap({{family("example2"), 4}}, {1, 1}, s, z, {4, 5, 6, 7});
    double lo = 1e300, hi = 0.0;
    for (const auto& row : rows) {
        CHECK(row.tau_max == doctest::Approx(2.0 / row.N).epsilon(1e-12));
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
    }
    CHECK(hi / lo < 3.0);

    // admissibility guard names the offending transform moment
    CHECK_THROWS_WITH_AS(
        (void)lindeberg_gap({{family("example2"), 2}}, {2, 2}, bernoulli_symmetric(), z, {4}),
        doctest::Contains("U_2"), DomainError);
    // a non-centered Y side is rejected
    CHECK_THROWS_AS(
        (void)lindeberg_gap({{family("example2"), 2}}, {1, 1}, s, free_poisson_centered(2), {4}),
        DomainError);
}

TEST_CASE("order swap leaves verdicts invariant") {
    // same kernels fed with first-order and second-order chaotic coordinates
    auto ex11 = semicircular_criterion(family("example2"), {1, 1}, {4, 5, 6}, fast_opts());
    auto ex22 = semicircular_criterion(family("example2"), {2, 2}, {4, 5, 6}, fast_opts());
    CHECK(ex11.verdict == ex22.verdict);

    auto p11 = semicircular_criterion(family("disjoint-pairs"), {1, 1}, {16, 24, 32, 40, 48},
                                      fast_opts());
    auto p22 = semicircular_criterion(family("disjoint-pairs"), {2, 2}, {16, 24, 32, 40, 48},
                                      fast_opts());
    CHECK(p11.verdict == p22.verdict);
    CHECK(p11.verdict == Verdict::SemicircularConsistent);
}
