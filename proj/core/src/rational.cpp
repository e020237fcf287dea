#include "ncchaos/rational.hpp"

#include <stdexcept>

#include "ncchaos/errors.hpp"

namespace ncchaos {

std::string to_fraction_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(std::string_view s) {
    try {
        Rational q(std::string(s), 10);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ValidationError("not a rational: '" + std::string(s) + "'");
    }
}

Rational rational_pow(const Rational& base, unsigned exponent) {
    Rational out(1);
    Rational b = base;
    unsigned e = exponent;
    while (e > 0) {
        if (e & 1u) out *= b;
        b *= b;
        e >>= 1u;
    }
    return out;
}

} // namespace ncchaos
