#include <doctest.h>

#include <cmath>

#include "ncchaos/errors.hpp"
#include "ncchaos/matrixmodel.hpp"
#include "ncchaos/words.hpp"

using namespace ncchaos;

namespace {

MatrixEnsembleSpec gue(int dim, int count, std::uint64_t seed) {
    MatrixEnsembleSpec spec;
    spec.dim = dim;
    spec.count = count;
    spec.kind = EnsembleKind::GaussianHermitian;
    spec.seed = seed;
    return spec;
}

} // namespace

TEST_CASE("seed determinism") {
    auto a = sample_family(gue(60, 3, 7));
    auto b = sample_family(gue(60, 3, 7));
    for (int i = 0; i < 3; ++i) CHECK((a[i] - b[i]).norm() == 0.0); // bitwise
    auto c = sample_family(gue(60, 3, 8));
    CHECK((a[0] - c[0]).norm() > 0.0);
}

TEST_CASE("hermitian samples with semicircular trace moments") {
    auto fam = sample_family(gue(200, 1, 7));
    const CMatrix& m = fam[0];
    CHECK((m - m.adjoint()).norm() < 1e-12);
    double tr2 = (m * m).trace().real() / 200;
    double tr4 = (m * m * m * m).trace().real() / 200;
    CHECK(std::fabs(tr2 - 1.0) < 0.05);
    CHECK(std::fabs(tr4 - 2.0) < 0.15);
}

TEST_CASE("centered wishart approximates the free Poisson law") {
    MatrixEnsembleSpec spec;
    spec.dim = 200;
    spec.count = 1;
    spec.kind = EnsembleKind::ShiftedWishart;
    spec.lambda = 1.0;
    spec.seed = 11;
    auto fam = sample_family(spec);
    const CMatrix& m = fam[0];
    CHECK(std::fabs(m.trace().real() / 200) < 0.05);           // centered
    CHECK(std::fabs((m * m).trace().real() / 200 - 1.0) < 0.1); // variance -> lambda
    // third moment of Z(1) is R_3 = 1
    CHECK(std::fabs((m * m * m).trace().real() / 200 - 1.0) < 0.2);
}

TEST_CASE("word moments against the exact engine") {
    auto fam = sample_family(gue(300, 2, 21));
    CHECK(empirical_word_moment(fam, Word::plain({0, 1, 1, 0})) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(std::fabs(empirical_word_moment(fam, Word::plain({0, 1, 0, 1}))) < 0.1);
    CHECK(empirical_word_moment(fam, Word{}) == 1.0);

    // a transformed letter: phi(U_2(M_0)^2) should be near 1
    Word w;
    w.letters.push_back(Letter{0, cheb_u(2)});
    w.letters.push_back(Letter{0, cheb_u(2)});
    CHECK(empirical_word_moment(fam, w) == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("sum moments in the matrix model") {
    auto fam = sample_family(gue(200, 6, 31));
    ChebyshevSumSpec spec(kernel_family("disjoint-pairs", 6), {1, 1});
    CHECK(empirical_sum_moment(spec, fam, 2) == doctest::Approx(1.0).epsilon(0.15));

    ChebyshevSumSpec star(kernel_family("star-counterexample", 6), {1, 1});
    CHECK(empirical_sum_moment(star, fam, 4) == doctest::Approx(2.5).epsilon(0.2));
}

TEST_CASE("guards") {
    MatrixEnsembleSpec spec = gue(1, 1, 0);
    CHECK_THROWS_AS(sample_family(spec), DomainError);
    MatrixEnsembleSpec huge = gue(20000, 40, 0);
    CHECK_THROWS_AS(sample_family(huge), ResourceError);
    auto fam = sample_family(gue(30, 1, 0));
    CHECK_THROWS_AS(empirical_word_moment(fam, Word::plain({2})), DomainError);
    ChebyshevSumSpec spec2(kernel_family("example2", 4), {1, 1});
    CHECK_THROWS_AS(empirical_sum_moment(spec2, fam, 2), DomainError);
}
