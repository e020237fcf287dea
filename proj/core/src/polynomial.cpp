#include "ncchaos/polynomial.hpp"

#include <cstdlib>

#include "ncchaos/errors.hpp"

namespace ncchaos {

namespace {
void trim(std::vector<long long>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}
} // namespace

IntPolynomial IntPolynomial::constant(long long c) {
    IntPolynomial p;
    if (c != 0) p.coeffs = {c};
    return p;
}

IntPolynomial IntPolynomial::x() {
    IntPolynomial p;
    p.coeffs = {0, 1};
    return p;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    IntPolynomial out;
    out.coeffs.resize(std::max(coeffs.size(), o.coeffs.size()), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] += coeffs[i];
    for (std::size_t i = 0; i < o.coeffs.size(); ++i) out.coeffs[i] += o.coeffs[i];
    trim(out.coeffs);
    return out;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (coeffs.empty() || o.coeffs.empty()) return {};
    IntPolynomial out;
    out.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    trim(out.coeffs);
    return out;
}

IntPolynomial IntPolynomial::pow(int k) const {
    if (k < 0) throw DomainError("IntPolynomial::pow: negative exponent");
    IntPolynomial out = constant(1);
    for (int i = 0; i < k; ++i) out = out * (*this);
    return out;
}

double IntPolynomial::eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + static_cast<double>(coeffs[i]);
    return acc;
}

std::string IntPolynomial::to_string() const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        long long c = coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += (c > 0) ? " + " : " - ";
        else if (c < 0) out += "-";
        long long a = std::llabs(c);
        if (a != 1 || i == 0) out += std::to_string(a);
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

IntPolynomial cheb_u(int h) {
    if (h < 0) throw DomainError("cheb_u: order must be nonnegative");
    IntPolynomial prev = IntPolynomial::constant(1);
    if (h == 0) return prev;
    IntPolynomial cur = IntPolynomial::x();
    for (int m = 1; m < h; ++m) {
        IntPolynomial next = IntPolynomial::x() * cur;
        // U_{m+1} = x U_m - U_{m-1}
        for (std::size_t i = 0; i < prev.coeffs.size(); ++i) next.coeffs[i] -= prev.coeffs[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Rational pushforward_moment(const FreeLaw& law, const IntPolynomial& p, int k) {
    if (k < 0) throw DomainError("pushforward_moment: k must be nonnegative");
    IntPolynomial pk = p.pow(k);
    if (pk.degree() > law.order)
        throw DomainError("pushforward_moment: degree " + std::to_string(pk.degree()) +
                          " exceeds law order " + std::to_string(law.order));
    Rational acc(0);
    for (int j = 0; j <= pk.degree(); ++j) {
        long long c = pk.coeff(j);
        if (c == 0) continue;
        acc += to_rational(c) * moments_from_cumulants(law, j);
    }
    return acc;
}

double pushforward_moment_d(const FreeLaw& law, const IntPolynomial& p, int k) {
    if (law.exact) return pushforward_moment(law, p, k).get_d();
    IntPolynomial pk = p.pow(k);
    if (pk.degree() > law.order)
        throw DomainError("pushforward_moment_d: degree " + std::to_string(pk.degree()) +
                          " exceeds law order " + std::to_string(law.order));
    double acc = 0.0;
    for (int j = 0; j <= pk.degree(); ++j) {
        long long c = pk.coeff(j);
        if (c == 0) continue;
        acc += static_cast<double>(c) * moments_from_cumulants_d(law, j);
    }
    return acc;
}

Rational chebyshev_orthonormality(int j, int k) {
    if (j < 0 || k < 0) throw DomainError("chebyshev_orthonormality: orders must be nonnegative");
    IntPolynomial prod = cheb_u(j) * cheb_u(k);
    FreeLaw s = semicircular(1, std::max(j + k, 2));
    Rational acc(0);
    for (int t = 0; t <= prod.degree(); ++t) {
        long long c = prod.coeff(t);
        if (c == 0) continue;
        acc += to_rational(c) * moments_from_cumulants(s, t);
    }
    return acc;
}

FreeLaw pushforward_law(const FreeLaw& law, const IntPolynomial& p, int K, std::string label) {
    if (K * std::max(p.degree(), 0) > law.order)
        throw DomainError("pushforward_law: K*deg(p) exceeds law order");
    if (law.exact) {
        std::vector<Rational> moments(static_cast<std::size_t>(K));
        for (int k = 1; k <= K; ++k)
            moments[static_cast<std::size_t>(k - 1)] = pushforward_moment(law, p, k);
        return cumulants_from_moments(moments, K, std::move(label));
    }
    std::vector<double> moments(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k)
        moments[static_cast<std::size_t>(k - 1)] = pushforward_moment_d(law, p, k);
    return cumulants_from_moments_f(moments, K, std::move(label));
}

} // namespace ncchaos
