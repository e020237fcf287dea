#include "ncchaos/matrixmodel.hpp"

#include <cmath>
#include <map>
#include <string>

#include "ncchaos/errors.hpp"
#include "ncchaos/rng.hpp"

namespace ncchaos {

namespace {

// GUE normalization: entry variance 1/dim, so (1/dim) E tr M^2 = 1
CMatrix sample_gue(int dim, Rng& rng) {
    CMatrix m(dim, dim);
    const double diagSigma = 1.0 / std::sqrt(static_cast<double>(dim));
    const double offSigma = 1.0 / std::sqrt(2.0 * dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = std::complex<double>(diagSigma * rng.next_gaussian(), 0.0);
        for (int j = i + 1; j < dim; ++j) {
            std::complex<double> z(offSigma * rng.next_gaussian(), offSigma * rng.next_gaussian());
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

// centered complex Wishart with aspect ratio lambda: W = G G^* / dim minus its
// mean (p/dim) I; spectral law converges to centered free Poisson(p/dim)
CMatrix sample_shifted_wishart(int dim, double lambda, Rng& rng) {
    int p = std::max(1, static_cast<int>(std::lround(lambda * dim)));
    const double sigma = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd g(dim, p);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < p; ++j)
            g(i, j) = std::complex<double>(sigma * rng.next_gaussian(), sigma * rng.next_gaussian());
    CMatrix w = (g * g.adjoint()) / static_cast<double>(dim);
    double ratio = static_cast<double>(p) / dim;
    w -= ratio * CMatrix::Identity(dim, dim);
    return w;
}

} // namespace

std::vector<CMatrix> sample_family(const MatrixEnsembleSpec& spec) {
    if (spec.dim < 2) throw DomainError("sample_family: dim must be at least 2");
    if (spec.count < 1) throw DomainError("sample_family: count must be positive");
    std::size_t bytes = static_cast<std::size_t>(spec.dim) * static_cast<std::size_t>(spec.dim) *
                        sizeof(std::complex<double>) * static_cast<std::size_t>(spec.count);
    if (bytes > kDefaultMatrixBudgetBytes)
        throw ResourceError("sample_family: " + std::to_string(bytes) + " bytes exceed the budget");

    std::vector<CMatrix> family;
    family.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(i));
        family.push_back(spec.kind == EnsembleKind::GaussianHermitian
                             ? sample_gue(spec.dim, rng)
                             : sample_shifted_wishart(spec.dim, spec.lambda, rng));
    }
    return family;
}

namespace {

CMatrix matrix_polynomial(const IntPolynomial& p, const CMatrix& m) {
    const long dim = m.rows();
    CMatrix acc = CMatrix::Zero(dim, dim);
    if (p.degree() < 0) return acc;
    CMatrix power = CMatrix::Identity(dim, dim);
    for (int k = 0;; ++k) {
        long long c = p.coeff(k);
        if (c != 0) acc += static_cast<double>(c) * power;
        if (k == p.degree()) break;
        power = power * m;
    }
    return acc;
}

} // namespace

double empirical_word_moment(const std::vector<CMatrix>& family, const Word& w) {
    if (family.empty()) throw DomainError("empirical_word_moment: empty family");
    const long dim = family.front().rows();
    if (w.letters.empty()) return 1.0;
    CMatrix prod = CMatrix::Identity(dim, dim);
    for (const auto& letter : w.letters) {
        if (letter.var < 0 || letter.var >= static_cast<int>(family.size()))
            throw DomainError("empirical_word_moment: word references matrix " +
                              std::to_string(letter.var) + " outside the family");
        prod = prod * matrix_polynomial(letter.transform, family[static_cast<std::size_t>(letter.var)]);
    }
    return prod.trace().real() / static_cast<double>(dim);
}

double empirical_sum_moment(const ChebyshevSumSpec& spec, const std::vector<CMatrix>& family,
                            int m) {
    if (m < 1) throw DomainError("empirical_sum_moment: m must be positive");
    if (spec.kernel.N > static_cast<int>(family.size()))
        throw DomainError("empirical_sum_moment: kernel range N exceeds the family size");
    const long dim = family.front().rows();

    // U_h(M_i) for every referenced (h, i)
    std::map<std::pair<int, int>, CMatrix> transformed;
    for (const auto& [idx, v] : spec.kernel.entries) {
        (void)v;
        for (std::size_t slot = 0; slot < idx.size(); ++slot) {
            auto key = std::make_pair(spec.orders[slot], static_cast<int>(idx[slot]));
            if (!transformed.count(key))
                transformed.emplace(key, matrix_polynomial(cheb_u(key.first),
                                                           family[static_cast<std::size_t>(key.second - 1)]));
        }
    }

    CMatrix q = CMatrix::Zero(dim, dim);
    for (const auto& [idx, v] : spec.kernel.entries) {
        CMatrix term = transformed.at({spec.orders[0], static_cast<int>(idx[0])});
        for (std::size_t slot = 1; slot < idx.size(); ++slot)
            term = term * transformed.at({spec.orders[slot], static_cast<int>(idx[slot])});
        q += v * term;
    }
    CMatrix power = q;
    for (int k = 1; k < m; ++k) power = power * q;
    return power.trace().real() / static_cast<double>(dim);
}

} // namespace ncchaos
