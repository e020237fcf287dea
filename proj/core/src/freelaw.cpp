#include "ncchaos/freelaw.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>

#include "ncchaos/errors.hpp"

namespace ncchaos {

namespace {

template <typename S>
std::vector<double> as_doubles(const std::vector<S>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if constexpr (std::is_same_v<S, Rational>) out.push_back(x.get_d());
        else out.push_back(x);
    }
    return out;
}

// m_n from r_1..r_n by conditioning on the block of position 1: a block of
// size s leaves s independent gaps whose lengths sum to n-s, each carrying a
// full moment. A_s(t) below is the s-fold convolution power of the moment
// sequence at total t.
template <typename S>
std::vector<S> moments_table(const std::vector<S>& r, int n) {
    std::vector<S> m(static_cast<std::size_t>(n) + 1);
    m[0] = S(1);
    for (int k = 1; k <= n; ++k) {
        // conv[s][t], built incrementally in s; conv[s] needs m_0..m_{k-1} only
        std::vector<std::vector<S>> conv(static_cast<std::size_t>(k) + 1,
                                         std::vector<S>(static_cast<std::size_t>(k), S(0)));
        for (int t = 0; t < k; ++t) conv[0][static_cast<std::size_t>(t)] = (t == 0) ? S(1) : S(0);
        for (int s = 1; s <= k; ++s)
            for (int t = 0; t <= k - s; ++t) {
                S acc(0);
                for (int g = 0; g <= t; ++g)
                    acc += m[static_cast<std::size_t>(g)] *
                           conv[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(t - g)];
                conv[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = acc;
            }
        S total(0);
        for (int s = 1; s <= k; ++s)
            total += r[static_cast<std::size_t>(s - 1)] *
                     conv[static_cast<std::size_t>(s)][static_cast<std::size_t>(k - s)];
        m[static_cast<std::size_t>(k)] = total;
    }
    return m;
}

// inverse recursion: r_n = m_n - sum_{s<n} r_s A_s(n-s) with A built from the
// given moments
template <typename S>
std::vector<S> cumulants_table(const std::vector<S>& m_in, int K) {
    std::vector<S> m(static_cast<std::size_t>(K) + 1);
    m[0] = S(1);
    for (int i = 1; i <= K; ++i) m[static_cast<std::size_t>(i)] = m_in[static_cast<std::size_t>(i - 1)];
    std::vector<S> r(static_cast<std::size_t>(K) + 1, S(0));
    for (int n = 1; n <= K; ++n) {
        std::vector<std::vector<S>> conv(static_cast<std::size_t>(n) + 1,
                                         std::vector<S>(static_cast<std::size_t>(n), S(0)));
        for (int t = 0; t < n; ++t) conv[0][static_cast<std::size_t>(t)] = (t == 0) ? S(1) : S(0);
        for (int s = 1; s <= n; ++s)
            for (int t = 0; t <= n - s; ++t) {
                S acc(0);
                for (int g = 0; g <= t; ++g)
                    acc += m[static_cast<std::size_t>(g)] *
                           conv[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(t - g)];
                conv[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = acc;
            }
        S val = m[static_cast<std::size_t>(n)];
        for (int s = 1; s < n; ++s)
            val -= r[static_cast<std::size_t>(s)] *
                   conv[static_cast<std::size_t>(s)][static_cast<std::size_t>(n - s)];
        r[static_cast<std::size_t>(n)] = val;
    }
    return std::vector<S>(r.begin() + 1, r.end());
}

} // namespace

const Rational& FreeLaw::r(int k) const {
    if (!exact) throw DomainError("FreeLaw::r: law '" + label + "' is float-backed");
    if (k < 1 || k > order) throw DomainError("FreeLaw::r: order " + std::to_string(k) + " exceeds K=" + std::to_string(order));
    return cumulants_q[static_cast<std::size_t>(k - 1)];
}

double FreeLaw::rd(int k) const {
    if (k < 1 || k > order) throw DomainError("FreeLaw::rd: order " + std::to_string(k) + " exceeds K=" + std::to_string(order));
    return cumulants_d[static_cast<std::size_t>(k - 1)];
}

bool FreeLaw::same_law(const FreeLaw& other) const {
    if (exact != other.exact || order != other.order) return false;
    return exact ? cumulants_q == other.cumulants_q : cumulants_d == other.cumulants_d;
}

FreeLaw law_from_cumulants(std::string label, std::vector<Rational> cumulants) {
    FreeLaw law;
    law.label = std::move(label);
    law.order = static_cast<int>(cumulants.size());
    law.exact = true;
    law.cumulants_d = as_doubles(cumulants);
    law.cumulants_q = std::move(cumulants);
    return law;
}

FreeLaw law_from_cumulants_f(std::string label, std::vector<double> cumulants) {
    FreeLaw law;
    law.label = std::move(label);
    law.order = static_cast<int>(cumulants.size());
    law.exact = false;
    law.cumulants_d = std::move(cumulants);
    return law;
}

FreeLaw semicircular(const Rational& variance, int order) {
    if (variance <= 0) throw DomainError("semicircular: variance must be positive");
    if (order < 2) throw DomainError("semicircular: order must be at least 2");
    std::vector<Rational> r(static_cast<std::size_t>(order), Rational(0));
    if (order >= 2) r[1] = variance;
    return law_from_cumulants("semicircular(" + to_fraction_string(variance) + ")", std::move(r));
}

FreeLaw free_poisson_centered(const Rational& lambda, int order) {
    if (lambda <= 0) throw DomainError("free_poisson_centered: lambda must be positive");
    if (order < 2) throw DomainError("free_poisson_centered: order must be at least 2");
    std::vector<Rational> r(static_cast<std::size_t>(order), lambda);
    if (!r.empty()) r[0] = 0;
    return law_from_cumulants("free-poisson(" + to_fraction_string(lambda) + ")", std::move(r));
}

FreeLaw bernoulli_symmetric(int order) {
    // moments 0,1,0,1,...
    std::vector<Rational> m(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k) m[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? 1 : 0;
    FreeLaw law = cumulants_from_moments(m, order, "bernoulli-sym");
    return law;
}

Rational moments_from_cumulants(const FreeLaw& law, int n) {
    if (n < 0) throw DomainError("moments_from_cumulants: n must be nonnegative");
    if (n > law.order) throw DomainError("moments_from_cumulants: n=" + std::to_string(n) + " exceeds law order " + std::to_string(law.order));
    if (!law.exact) throw DomainError("moments_from_cumulants: law '" + law.label + "' is float-backed; use moments_from_cumulants_d");
    return moments_table(law.cumulants_q, n)[static_cast<std::size_t>(n)];
}

double moments_from_cumulants_d(const FreeLaw& law, int n) {
    if (n < 0) throw DomainError("moments_from_cumulants_d: n must be nonnegative");
    if (n > law.order) throw DomainError("moments_from_cumulants_d: n=" + std::to_string(n) + " exceeds law order " + std::to_string(law.order));
    return moments_table(law.cumulants_d, n)[static_cast<std::size_t>(n)];
}

FreeLaw cumulants_from_moments(const std::vector<Rational>& moments, int K, std::string label) {
    if (static_cast<int>(moments.size()) < K) throw DomainError("cumulants_from_moments: need at least K moments");
    return law_from_cumulants(std::move(label), cumulants_table(moments, K));
}

FreeLaw cumulants_from_moments_f(const std::vector<double>& moments, int K, std::string label) {
    if (static_cast<int>(moments.size()) < K) throw DomainError("cumulants_from_moments_f: need at least K moments");
    return law_from_cumulants_f(std::move(label), cumulants_table(moments, K));
}

FreeLaw free_convolve(const FreeLaw& a, const FreeLaw& b) {
    int order = std::min(a.order, b.order);
    if (a.exact && b.exact) {
        std::vector<Rational> r(static_cast<std::size_t>(order));
        for (int k = 1; k <= order; ++k)
            r[static_cast<std::size_t>(k - 1)] = a.cumulants_q[static_cast<std::size_t>(k - 1)] +
                                                 b.cumulants_q[static_cast<std::size_t>(k - 1)];
        return law_from_cumulants(a.label + "+" + b.label, std::move(r));
    }
    std::vector<double> r(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k)
        r[static_cast<std::size_t>(k - 1)] =
            a.cumulants_d[static_cast<std::size_t>(k - 1)] + b.cumulants_d[static_cast<std::size_t>(k - 1)];
    return law_from_cumulants_f(a.label + "+" + b.label, std::move(r));
}

FreeLaw scale(const FreeLaw& a, const Rational& c) {
    if (!a.exact) return scale(a, c.get_d());
    std::vector<Rational> r(static_cast<std::size_t>(a.order));
    Rational p(1);
    for (int k = 1; k <= a.order; ++k) {
        p *= c;
        r[static_cast<std::size_t>(k - 1)] = p * a.cumulants_q[static_cast<std::size_t>(k - 1)];
    }
    return law_from_cumulants(to_fraction_string(c) + "*" + a.label, std::move(r));
}

FreeLaw scale(const FreeLaw& a, double c) {
    std::vector<double> r(static_cast<std::size_t>(a.order));
    double p = 1.0;
    for (int k = 1; k <= a.order; ++k) {
        p *= c;
        r[static_cast<std::size_t>(k - 1)] = p * a.cumulants_d[static_cast<std::size_t>(k - 1)];
    }
    return law_from_cumulants_f("scaled*" + a.label, std::move(r));
}

double spectral_radius_estimate(const FreeLaw& law, int k) {
    if (k < 1) throw DomainError("spectral_radius_estimate: k must be positive");
    if (2 * k > law.order) throw DomainError("spectral_radius_estimate: 2k exceeds law order");
    double m2k = std::fabs(moments_from_cumulants_d(law, 2 * k));
    return std::pow(m2k, 1.0 / (2.0 * k));
}

nlohmann::json law_to_json(const FreeLaw& law) {
    nlohmann::json j;
    j["label"] = law.label;
    if (law.exact) {
        std::vector<std::string> cs;
        cs.reserve(law.cumulants_q.size());
        for (const auto& c : law.cumulants_q) cs.push_back(to_fraction_string(c));
        j["cumulants"] = cs;
    } else {
        j["cumulants_float"] = law.cumulants_d;
    }
    return j;
}

FreeLaw law_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("law JSON: expected an object");
    std::string label = j.value("label", std::string("unnamed"));
    if (j.contains("cumulants")) {
        std::vector<Rational> cs;
        for (const auto& item : j.at("cumulants")) {
            if (item.is_string()) cs.push_back(rational_from_string(item.get<std::string>()));
            else if (item.is_number_integer()) cs.push_back(to_rational(item.get<long long>()));
            else throw ValidationError("law JSON: cumulants must be fraction strings or integers");
        }
        return law_from_cumulants(std::move(label), std::move(cs));
    }
    if (j.contains("cumulants_float")) {
        std::vector<double> cs = j.at("cumulants_float").get<std::vector<double>>();
        return law_from_cumulants_f(std::move(label), std::move(cs));
    }
    throw ValidationError("law JSON: missing 'cumulants'");
}

FreeLaw law_from_name(std::string_view name, int order) {
    if (!name.empty() && name.front() == '{')
        return law_from_json(nlohmann::json::parse(name));
    auto colon = name.find(':');
    std::string_view head = name.substr(0, colon);
    std::string_view param =
        colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
    if (head == "semicircular")
        return semicircular(param.empty() ? Rational(1) : rational_from_string(param), order);
    if (head == "free-poisson")
        return free_poisson_centered(param.empty() ? Rational(1) : rational_from_string(param), order);
    if (head == "bernoulli-sym") return bernoulli_symmetric(order);
    throw DomainError("unknown law name: '" + std::string(name) + "'");
}

} // namespace ncchaos
