#pragma once

#include <string>
#include <vector>

#include "ncchaos/freelaw.hpp"
#include "ncchaos/rational.hpp"

namespace ncchaos {

// Polynomial with exact integer coefficients, ascending degree.
// Normalized: no trailing zero coefficients; the zero polynomial is {}.
struct IntPolynomial {
    std::vector<long long> coeffs;

    static IntPolynomial constant(long long c);
    static IntPolynomial x();

    int degree() const { return static_cast<int>(coeffs.size()) - 1; } // -1 for zero
    bool is_identity() const { return coeffs.size() == 2 && coeffs[0] == 0 && coeffs[1] == 1; }
    long long coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs.size())) ? coeffs[k] : 0;
    }

    IntPolynomial operator+(const IntPolynomial&) const;
    IntPolynomial operator*(const IntPolynomial&) const;
    IntPolynomial pow(int k) const;

    double eval(double x) const;
    std::string to_string() const; // e.g. "x^3 - 2x"
    bool operator==(const IntPolynomial&) const = default;
};

// Chebyshev polynomial of the second kind on [-2,2], monic normalization:
// U_0 = 1, U_1 = x, U_{m+1} = x U_m - U_{m-1}.
IntPolynomial cheb_u(int h);

// phi(p(X)^k), exact. Requires k*deg(p) <= law.order.
Rational pushforward_moment(const FreeLaw& law, const IntPolynomial& p, int k);
double pushforward_moment_d(const FreeLaw& law, const IntPolynomial& p, int k);

// phi(U_j(S) U_k(S)) for standard semicircular S; equals delta_{jk}.
Rational chebyshev_orthonormality(int j, int k);

// Law of p(X): moments of the pushforward converted back to cumulants.
FreeLaw pushforward_law(const FreeLaw& law, const IntPolynomial& p, int K,
                        std::string label = "pushforward");

} // namespace ncchaos
