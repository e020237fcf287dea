#include "ncchaos/kernel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

#include "ncchaos/errors.hpp"

namespace ncchaos {

void Kernel::set(Index idx, double value) {
    if (static_cast<int>(idx.size()) != d) throw DomainError("Kernel::set: arity mismatch");
    for (auto i : idx)
        if (i < 1 || i > N) throw DomainError("Kernel::set: index out of range");
    if (value == 0.0) entries.erase(idx);
    else entries[std::move(idx)] = value;
}

double Kernel::at(const Index& idx) const {
    auto it = entries.find(idx);
    return it == entries.end() ? 0.0 : it->second;
}

double Kernel::variance() const {
    double acc = 0.0;
    for (const auto& [idx, v] : entries) acc += v * v;
    return acc;
}

double Kernel::norm() const { return std::sqrt(variance()); }

ValidationReport validate(const Kernel& f) {
    ValidationReport rep;
    rep.variance = f.variance();
    rep.mirror = true;
    rep.diagonal_free = true;
    Index rev;
    for (const auto& [idx, v] : f.entries) {
        rev.assign(idx.rbegin(), idx.rend());
        if (f.at(rev) != v) rep.mirror = false;
        for (std::size_t a = 0; a + 1 < idx.size() && rep.diagonal_free; ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (idx[a] == idx[b]) {
                    rep.diagonal_free = false;
                    break;
                }
    }
    return rep;
}

double influence(const Kernel& f, int i) {
    if (i < 1 || i > f.N) throw DomainError("influence: index out of range");
    double acc = 0.0;
    for (const auto& [idx, v] : f.entries) {
        int hits = 0;
        for (auto x : idx)
            if (x == i) ++hits;
        if (hits) acc += static_cast<double>(hits) * v * v;
    }
    return acc;
}

std::vector<double> influence_profile(const Kernel& f) {
    std::vector<double> out(static_cast<std::size_t>(f.N), 0.0);
    for (const auto& [idx, v] : f.entries)
        for (auto x : idx) out[static_cast<std::size_t>(x - 1)] += v * v;
    return out;
}

double tau(const Kernel& f) {
    double best = 0.0;
    for (double v : influence_profile(f)) best = std::max(best, v);
    return best;
}

Kernel contract(const Kernel& f, const Kernel& g, int q) {
    if (f.d != g.d || f.N != g.N) throw DomainError("contract: incompatible kernels");
    if (q < 0 || q > f.d) throw DomainError("contract: q out of range 0.." + std::to_string(f.d));
    const int d = f.d;
    Kernel out(2 * (d - q), f.N);

    // group g entries by their first q slots
    std::map<Index, std::vector<std::pair<Index, double>>> byPrefix;
    for (const auto& [idx, v] : g.entries) {
        Index prefix(idx.begin(), idx.begin() + q);
        Index rest(idx.begin() + q, idx.end());
        byPrefix[std::move(prefix)].emplace_back(std::move(rest), v);
    }

    Index key, outIdx;
    for (const auto& [idx, v] : f.entries) {
        // last q slots of f, reversed, must match g's first q slots
        key.assign(idx.rbegin(), idx.rbegin() + q);
        auto it = byPrefix.find(key);
        if (it == byPrefix.end()) continue;
        for (const auto& [rest, gv] : it->second) {
            outIdx.assign(idx.begin(), idx.end() - q);
            outIdx.insert(outIdx.end(), rest.begin(), rest.end());
            out.entries[outIdx] += v * gv;
        }
    }
    std::erase_if(out.entries, [](const auto& kv) { return kv.second == 0.0; });
    return out;
}

Kernel contract(const Kernel& f, int q) { return contract(f, f, q); }

Kernel star_contract(const Kernel& f, const Kernel& g, int r) {
    if (f.d != g.d || f.N != g.N) throw DomainError("star_contract: incompatible kernels");
    if (r < 1 || r > f.d) throw DomainError("star_contract: r out of range 1.." + std::to_string(f.d));
    const int d = f.d;
    Kernel out(2 * (d - r) + 1, f.N);

    // f(t_1..t_{d-r}, gamma, i_1..i_{r-1}) g(i_{r-1}..i_1, gamma, s_1..s_{d-r})
    std::map<Index, std::vector<std::pair<Index, double>>> byPrefix; // (i_rev, gamma) -> (s, gv)
    for (const auto& [idx, v] : g.entries) {
        Index prefix(idx.begin(), idx.begin() + r); // i_{r-1}..i_1, gamma
        Index rest(idx.begin() + r, idx.end());
        byPrefix[std::move(prefix)].emplace_back(std::move(rest), v);
    }

    Index key, outIdx;
    for (const auto& [idx, v] : f.entries) {
        key.assign(idx.rbegin(), idx.rbegin() + (r - 1)); // i reversed
        key.push_back(idx[static_cast<std::size_t>(d - r)]); // gamma
        auto it = byPrefix.find(key);
        if (it == byPrefix.end()) continue;
        for (const auto& [rest, gv] : it->second) {
            outIdx.assign(idx.begin(), idx.begin() + (d - r + 1)); // t, gamma
            outIdx.insert(outIdx.end(), rest.begin(), rest.end());
            out.entries[outIdx] += v * gv;
        }
    }
    std::erase_if(out.entries, [](const auto& kv) { return kv.second == 0.0; });
    return out;
}

Kernel star_contract(const Kernel& f, int r) { return star_contract(f, f, r); }

Kernel kernel_difference(const Kernel& a, const Kernel& b) {
    if (a.d != b.d || a.N != b.N) throw DomainError("kernel_difference: incompatible kernels");
    Kernel out = a;
    for (const auto& [idx, v] : b.entries) {
        double nv = out.at(idx) - v;
        if (nv == 0.0) out.entries.erase(idx);
        else out.entries[idx] = nv;
    }
    return out;
}

double max_abs_difference(const Kernel& a, const Kernel& b) {
    double best = 0.0;
    for (const auto& [idx, v] : a.entries) best = std::max(best, std::fabs(v - b.at(idx)));
    for (const auto& [idx, v] : b.entries) best = std::max(best, std::fabs(v - a.at(idx)));
    return best;
}

LiftedKernel::LiftedKernel(Kernel base_, std::vector<int> orders_)
    : base(std::move(base_)), orders(std::move(orders_)) {
    if (static_cast<int>(orders.size()) != base.d)
        throw DomainError("LiftedKernel: orders length must equal kernel arity");
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1) throw DomainError("LiftedKernel: orders must be positive");
        if (orders[i] != orders[orders.size() - 1 - i])
            throw DomainError("LiftedKernel: orders must be palindromic (h_i = h_{d-i+1})");
        m += orders[i];
    }
}

double lifted_contraction_norm(const LiftedKernel& k, int r) {
    if (r < 1 || r >= k.m) throw DomainError("lifted_contraction_norm: r out of range 1.." + std::to_string(k.m - 1));
    int prefix = 0;
    for (int q = 1; q <= k.base.d; ++q) {
        int next = prefix + k.orders[static_cast<std::size_t>(q - 1)];
        if (r == next && q <= k.base.d - 1) return contract(k.base, q).norm();
        if (r > prefix && r < next) return star_contract(k.base, q).norm();
        prefix = next;
    }
    throw DomainError("lifted_contraction_norm: r does not map to any block"); // unreachable
}

double lifted_midpoint_defect(const LiftedKernel& k) {
    if (k.m % 2 != 0) throw DomainError("lifted_midpoint_defect: h_1+..+h_d must be even");
    const int d = k.base.d;
    Kernel contracted =
        (d % 2 == 0) ? contract(k.base, d / 2) : star_contract(k.base, (d + 1) / 2);
    return kernel_difference(contracted, k.base).norm();
}

Kernel materialize_tensor(const LiftedKernel& k, std::size_t dense_cap) {
    double size = 1.0;
    for (int i = 0; i < k.m; ++i) size *= static_cast<double>(k.base.N);
    if (size > static_cast<double>(dense_cap))
        throw ResourceError("materialize_tensor: N^m exceeds dense cap");
    Kernel out(k.m, k.base.N);
    Index expanded;
    for (const auto& [idx, v] : k.base.entries) {
        expanded.clear();
        for (std::size_t slot = 0; slot < idx.size(); ++slot)
            expanded.insert(expanded.end(), static_cast<std::size_t>(k.orders[slot]), idx[slot]);
        out.entries[expanded] = v;
    }
    return out;
}

Kernel kernel_family(std::string_view name, int N) {
    Kernel f(2, N);
    auto both = [&f](int i, int j, double v) {
        f.entries[{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)}] = v;
        f.entries[{static_cast<std::int32_t>(j), static_cast<std::int32_t>(i)}] = v;
    };
    if (name == "example1" || name == "star-counterexample") {
        if (N < 2) throw DomainError("kernel_family: " + std::string(name) + " needs N >= 2");
        double v = 1.0 / std::sqrt(2.0 * N - 2.0);
        for (int j = 2; j <= N; ++j) both(1, j, v);
        return f;
    }
    if (name == "example2") {
        if (N < 2) throw DomainError("kernel_family: example2 needs N >= 2");
        double v = 1.0 / std::sqrt(static_cast<double>(N) * (N - 1));
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j)
                if (i != j) f.entries[{i, j}] = v;
        return f;
    }
    if (name == "example3") {
        if (N < 3) throw DomainError("kernel_family: example3 needs N >= 3");
        double v = 1.0 / std::sqrt(static_cast<double>(N - 1) * (N - 2));
        for (int i = 2; i <= N; ++i)
            for (int j = 2; j <= N; ++j)
                if (i != j) f.entries[{i, j}] = v;
        return f;
    }
    if (name == "offdiag-constant") {
        if (N < 3) throw DomainError("kernel_family: offdiag-constant needs N >= 3");
        double v = 1.0 / std::sqrt(static_cast<double>(N - 2));
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j)
                if (i != j) f.entries[{i, j}] = v;
        return f;
    }
    if (name == "disjoint-pairs") {
        if (N < 2) throw DomainError("kernel_family: disjoint-pairs needs N >= 2");
        int K = N / 2;
        double v = 1.0 / std::sqrt(2.0 * K);
        for (int t = 1; t <= K; ++t) both(2 * t - 1, 2 * t, v);
        return f;
    }
    throw DomainError("unknown kernel family: '" + std::string(name) + "'");
}

std::vector<std::string> kernel_family_names() {
    return {"example1", "example2", "example3", "offdiag-constant", "star-counterexample",
            "disjoint-pairs"};
}

Kernel kernel_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("N") || !j.contains("entries"))
        throw ValidationError("kernel JSON: expected {d, N, entries}");
    Kernel f(j.at("d").get<int>(), j.at("N").get<int>());
    if (f.d < 1 || f.N < 1) throw ValidationError("kernel JSON: d and N must be positive");
    for (const auto& e : j.at("entries")) {
        Index idx = e.at("idx").get<Index>();
        double val = e.at("val").get<double>();
        if (static_cast<int>(idx.size()) != f.d) throw ValidationError("kernel JSON: idx arity mismatch");
        for (auto i : idx)
            if (i < 1 || i > f.N) throw ValidationError("kernel JSON: index out of range");
        if (!std::isfinite(val)) throw ValidationError("kernel JSON: non-finite value");
        if (f.entries.count(idx)) throw ValidationError("kernel JSON: duplicate idx");
        if (val != 0.0) f.entries[idx] = val;
    }
    return f;
}

nlohmann::json kernel_to_json(const Kernel& f) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [idx, v] : f.entries) entries.push_back({{"idx", idx}, {"val", v}});
    return {{"d", f.d}, {"N", f.N}, {"entries", entries}};
}

} // namespace ncchaos
