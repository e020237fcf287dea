#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncchaos {

// Exact rational scalar for cumulant/moment arithmetic.
using Rational = mpq_class;
using BigInt = mpz_class;

inline double to_double(const Rational& q) { return q.get_d(); }

// gmpxx has no long long constructor; long is 64-bit on every supported target
inline Rational to_rational(long long v) { return Rational(static_cast<long>(v)); }

// "3/4", "-1/2", "5" — the JSON wire form for exact law coefficients.
std::string to_fraction_string(const Rational& q);
Rational rational_from_string(std::string_view s);

Rational rational_pow(const Rational& base, unsigned exponent);

} // namespace ncchaos
