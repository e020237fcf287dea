#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncchaos/rational.hpp"

namespace ncchaos {

inline constexpr int kDefaultLawOrder = 16;

// A compactly supported non-commutative law, represented by its free cumulant
// sequence r_1..r_K. Laws built from rational data stay exact; scaling by an
// irrational constant switches the law to float-backed cumulants so loss of
// exactness stays visible in downstream results.
struct FreeLaw {
    std::string label;
    int order = 0; // K
    bool exact = true;
    std::vector<Rational> cumulants_q; // size K when exact, else empty
    std::vector<double> cumulants_d;   // size K always

    const Rational& r(int k) const; // 1-based cumulant, exact backing required
    double rd(int k) const;         // 1-based cumulant as double

    // content equality (label ignored)
    bool same_law(const FreeLaw& other) const;
};

FreeLaw law_from_cumulants(std::string label, std::vector<Rational> cumulants);
FreeLaw law_from_cumulants_f(std::string label, std::vector<double> cumulants);

FreeLaw semicircular(const Rational& variance, int order = kDefaultLawOrder);
FreeLaw free_poisson_centered(const Rational& lambda, int order = kDefaultLawOrder);
FreeLaw bernoulli_symmetric(int order = kDefaultLawOrder);

// m_n = sum over NC(n) of the block-wise cumulant products.
Rational moments_from_cumulants(const FreeLaw& law, int n);
double moments_from_cumulants_d(const FreeLaw& law, int n);

// Unique cumulant sequence reproducing the given moments up to order K,
// computed by peeling the block containing position 1.
FreeLaw cumulants_from_moments(const std::vector<Rational>& moments, int K,
                               std::string label = "from-moments");
FreeLaw cumulants_from_moments_f(const std::vector<double>& moments, int K,
                                 std::string label = "from-moments");

FreeLaw free_convolve(const FreeLaw& a, const FreeLaw& b);
FreeLaw scale(const FreeLaw& a, const Rational& c);
FreeLaw scale(const FreeLaw& a, double c); // float-backed result

// |m_2k|^(1/2k), finite-order stand-in for the spectral radius.
double spectral_radius_estimate(const FreeLaw& law, int k);

nlohmann::json law_to_json(const FreeLaw& law);
FreeLaw law_from_json(const nlohmann::json& j);

// "semicircular", "semicircular:4", "free-poisson:1/2", "bernoulli-sym",
// or inline JSON starting with '{'.
FreeLaw law_from_name(std::string_view name, int order = kDefaultLawOrder);

} // namespace ncchaos
