#include "ncchaos/words.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "ncchaos/errors.hpp"

namespace ncchaos {

Word Word::plain(const std::vector<int>& vars) {
    Word w;
    w.letters.reserve(vars.size());
    for (int v : vars) w.letters.push_back(Letter{v, IntPolynomial::x()});
    return w;
}

VariableFamily VariableFamily::iid(const FreeLaw& law, int count) {
    VariableFamily fam;
    for (int v = 0; v < count; ++v) fam.laws.emplace(v, law);
    return fam;
}

const FreeLaw& VariableFamily::law_of(int var) const {
    auto it = laws.find(var);
    if (it == laws.end()) throw DomainError("VariableFamily: undeclared variable " + std::to_string(var));
    return it->second;
}

bool VariableFamily::all_exact() const {
    for (const auto& [v, law] : laws)
        if (!law.exact) return false;
    return true;
}

namespace {

// position in a pure word: (variable id, law id)
struct Pos {
    int var;
    int law;
};

template <typename S>
S cumulant_of(const FreeLaw& law, int s);

template <>
Rational cumulant_of<Rational>(const FreeLaw& law, int s) {
    return law.r(s);
}

template <>
double cumulant_of<double>(const FreeLaw& law, int s) {
    return law.rd(s);
}

// memo key: collision pattern of the positions plus the law of each rank
std::string canonical_key(const std::vector<Pos>& w) {
    std::string key;
    key.reserve(2 * w.size() + 1);
    std::vector<int> vars;
    std::vector<char> lawOfRank;
    for (const auto& p : w) {
        std::size_t rank = 0;
        while (rank < vars.size() && vars[rank] != p.var) ++rank;
        if (rank == vars.size()) {
            vars.push_back(p.var);
            lawOfRank.push_back(static_cast<char>(p.law));
        }
        key.push_back(static_cast<char>(rank));
    }
    key.push_back('\x7f');
    key.append(lawOfRank.begin(), lawOfRank.end());
    return key;
}

// phi on pure words: sum over monochromatic non-crossing partitions of
// block-wise free cumulants, evaluated by conditioning on the block of the
// first position. The chosen block splits the rest into independent gaps.
template <typename S>
class PureEngine {
public:
    explicit PureEngine(std::vector<const FreeLaw*> laws) : laws_(std::move(laws)) {}

    S phi(const std::vector<Pos>& w) {
        if (w.empty()) return S(1);
        std::string key = canonical_key(w);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        const FreeLaw& law = *laws_[static_cast<std::size_t>(w[0].law)];
        std::vector<std::size_t> candidates; // later positions with the same variable
        for (std::size_t p = 1; p < w.size(); ++p)
            if (w[p].var == w[0].var) candidates.push_back(p);

        S total(0);
        const std::size_t nc = candidates.size();
        std::vector<std::size_t> block;
        for (std::uint64_t mask = 0; mask < (1ULL << nc); ++mask) {
            int s = 1 + __builtin_popcountll(mask);
            S r = cumulant_of<S>(law, s);
            if (r == S(0)) continue;
            block.assign(1, 0);
            for (std::size_t b = 0; b < nc; ++b)
                if (mask & (1ULL << b)) block.push_back(candidates[b]);
            S prod = r;
            bool dead = false;
            for (std::size_t t = 0; t < block.size() && !dead; ++t) {
                std::size_t lo = block[t] + 1;
                std::size_t hi = (t + 1 < block.size()) ? block[t + 1] : w.size();
                if (lo >= hi) continue;
                std::vector<Pos> gap(w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi));
                S g = phi(gap);
                if (g == S(0)) dead = true;
                else prod *= g;
            }
            if (!dead) total += prod;
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

private:
    std::vector<const FreeLaw*> laws_;
    std::unordered_map<std::string, S> memo_;
};

struct Monomial {
    int degree;
    long long coeff;
};

std::vector<Monomial> monomials(const IntPolynomial& p) {
    std::vector<Monomial> out;
    for (int k = 0; k <= p.degree(); ++k)
        if (p.coeff(k) != 0) out.push_back({k, p.coeff(k)});
    return out;
}

struct Registry {
    std::vector<const FreeLaw*> laws;
    std::unordered_map<int, int> lawOfVar;

    Registry(const VariableFamily& fam, const Word& w) {
        for (const auto& letter : w.letters) {
            if (lawOfVar.count(letter.var)) continue;
            const FreeLaw& law = fam.law_of(letter.var);
            int id = -1;
            for (std::size_t i = 0; i < laws.size(); ++i)
                if (laws[i]->same_law(law)) {
                    id = static_cast<int>(i);
                    break;
                }
            if (id < 0) {
                id = static_cast<int>(laws.size());
                laws.push_back(&law);
            }
            lawOfVar.emplace(letter.var, id);
        }
    }
};

template <typename S>
S expanded_word_moment(const VariableFamily& fam, const Word& w, const Registry& reg) {
    // per-letter monomial lists; the odometer walks their product
    std::vector<std::vector<Monomial>> expansion;
    expansion.reserve(w.letters.size());
    int maxDegree = 0;
    std::unordered_map<int, int> degreeOfVar;
    for (const auto& letter : w.letters) {
        expansion.push_back(monomials(letter.transform));
        maxDegree += std::max(letter.transform.degree(), 0);
        degreeOfVar[letter.var] += std::max(letter.transform.degree(), 0);
    }
    if (maxDegree > kWordDegreeCap)
        throw ResourceError("word_moment: expanded degree " + std::to_string(maxDegree) +
                            " exceeds cap " + std::to_string(kWordDegreeCap));
    for (const auto& [var, deg] : degreeOfVar) {
        if (deg > fam.law_of(var).order)
            throw DomainError("word_moment: degree " + std::to_string(deg) + " of variable " +
                              std::to_string(var) + " exceeds law order " +
                              std::to_string(fam.law_of(var).order));
    }

    // a zero-polynomial letter annihilates the whole word
    for (const auto& e : expansion)
        if (e.empty()) return S(0);

    PureEngine<S> engine(reg.laws);
    S total(0);
    std::vector<std::size_t> pick(w.letters.size(), 0);
    std::vector<Pos> pure;
    for (;;) {
        S coeff(1);
        pure.clear();
        for (std::size_t i = 0; i < pick.size(); ++i) {
            const Monomial& mono = expansion[i][pick[i]];
            if constexpr (std::is_same_v<S, Rational>) coeff *= to_rational(mono.coeff);
            else coeff *= static_cast<double>(mono.coeff);
            int var = w.letters[i].var;
            int law = reg.lawOfVar.at(var);
            for (int rep = 0; rep < mono.degree; ++rep) pure.push_back(Pos{var, law});
        }
        total += coeff * engine.phi(pure);

        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == expansion[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return total;
}

} // namespace

MomentValue word_moment(const VariableFamily& fam, const Word& w) {
    Registry reg(fam, w);
    MomentValue out;
    out.exact = true;
    for (const FreeLaw* law : reg.laws) out.exact = out.exact && law->exact;
    if (out.exact) {
        out.value_q = expanded_word_moment<Rational>(fam, w, reg);
        out.value_d = out.value_q.get_d();
    } else {
        out.value_d = expanded_word_moment<double>(fam, w, reg);
    }
    return out;
}

namespace {

// --- independent route: centering + the vanishing of alternating centered
// products, with single-variable words delegated to moments_from_cumulants ---

struct RLetter {
    int var;
    int law;
    IntPolynomial transform;
};

template <typename S>
S single_letter_moment(const FreeLaw& law, const IntPolynomial& p) {
    S acc(0);
    for (int k = 0; k <= p.degree(); ++k) {
        long long c = p.coeff(k);
        if (c == 0) continue;
        if constexpr (std::is_same_v<S, Rational>) acc += to_rational(c) * moments_from_cumulants(law, k);
        else acc += static_cast<double>(c) * moments_from_cumulants_d(law, k);
    }
    return acc;
}

// merge adjacent letters of the same variable (polynomials multiply)
std::vector<RLetter> merged(std::vector<RLetter> w) {
    std::vector<RLetter> out;
    for (auto& letter : w) {
        if (!out.empty() && out.back().var == letter.var)
            out.back().transform = out.back().transform * letter.transform;
        else out.push_back(std::move(letter));
    }
    return out;
}

std::string recursive_key(const std::vector<RLetter>& w) {
    std::string key;
    std::vector<int> vars;
    std::vector<char> lawOfRank;
    for (const auto& letter : w) {
        std::size_t rank = 0;
        while (rank < vars.size() && vars[rank] != letter.var) ++rank;
        if (rank == vars.size()) {
            vars.push_back(letter.var);
            lawOfRank.push_back(static_cast<char>(letter.law));
        }
        key.push_back(static_cast<char>(rank));
        key.push_back(':');
        for (long long c : letter.transform.coeffs) {
            key += std::to_string(c);
            key.push_back(',');
        }
        key.push_back(';');
    }
    key.push_back('\x7f');
    key.append(lawOfRank.begin(), lawOfRank.end());
    return key;
}

template <typename S>
class RecursiveEngine {
public:
    explicit RecursiveEngine(std::vector<const FreeLaw*> laws) : laws_(std::move(laws)) {}

    S phi(const std::vector<RLetter>& w_in) {
        std::vector<RLetter> w = merged(w_in);
        if (w.empty()) return S(1);
        if (w.size() == 1) return single_letter_moment<S>(*laws_[static_cast<std::size_t>(w[0].law)], w[0].transform);
        std::string key = recursive_key(w);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        const std::size_t k = w.size();
        // means of each letter
        std::vector<S> mean(k);
        for (std::size_t i = 0; i < k; ++i)
            mean[i] = single_letter_moment<S>(*laws_[static_cast<std::size_t>(w[i].law)], w[i].transform);

        // 0 = phi(prod (a_i - mean_i)) over the alternating word, hence
        // phi(w) = - sum over proper subsets T of (-1)^{k-|T|} prod_{i not in T} mean_i * phi(w_T)
        S total(0);
        std::vector<RLetter> sub;
        for (std::uint64_t mask = 0; mask + 1 < (1ULL << k); ++mask) {
            S factor((k - static_cast<std::size_t>(__builtin_popcountll(mask))) % 2 == 0 ? 1 : -1);
            bool zero = false;
            sub.clear();
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1ULL << i)) sub.push_back(w[i]);
                else {
                    if (mean[i] == S(0)) {
                        zero = true;
                        break;
                    }
                    factor *= mean[i];
                }
            }
            if (zero) continue;
            total -= factor * phi(sub);
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

private:
    std::vector<const FreeLaw*> laws_;
    std::unordered_map<std::string, S> memo_;
};

template <typename S>
S recursive_word_moment(const VariableFamily& fam, const Word& w, const Registry& reg) {
    int totalDegree = 0;
    std::unordered_map<int, int> degreeOfVar;
    for (const auto& letter : w.letters) {
        totalDegree += std::max(letter.transform.degree(), 0);
        degreeOfVar[letter.var] += std::max(letter.transform.degree(), 0);
    }
    if (totalDegree > kWordDegreeCap)
        throw ResourceError("word_moment_recursive: expanded degree exceeds cap");
    for (const auto& [var, deg] : degreeOfVar)
        if (deg > fam.law_of(var).order)
            throw DomainError("word_moment_recursive: degree of variable " + std::to_string(var) +
                              " exceeds law order");

    std::vector<RLetter> letters;
    letters.reserve(w.letters.size());
    for (const auto& letter : w.letters)
        letters.push_back(RLetter{letter.var, reg.lawOfVar.at(letter.var), letter.transform});
    RecursiveEngine<S> engine(reg.laws);
    return engine.phi(letters);
}

} // namespace

MomentValue word_moment_recursive(const VariableFamily& fam, const Word& w) {
    Registry reg(fam, w);
    MomentValue out;
    out.exact = true;
    for (const FreeLaw* law : reg.laws) out.exact = out.exact && law->exact;
    if (out.exact) {
        out.value_q = recursive_word_moment<Rational>(fam, w, reg);
        out.value_d = out.value_q.get_d();
    } else {
        out.value_d = recursive_word_moment<double>(fam, w, reg);
    }
    return out;
}

namespace {

Rational wick_rec(const std::vector<std::vector<Rational>>& cov, const std::vector<int>& idx,
                  std::vector<std::size_t>& open) {
    if (open.empty()) return Rational(1);
    Rational total(0);
    std::size_t first = open.front();
    for (std::size_t j = 1; j < open.size(); j += 2) {
        std::size_t partner = open[j];
        Rational c = cov[static_cast<std::size_t>(idx[first])][static_cast<std::size_t>(idx[partner])];
        if (c == 0) continue;
        std::vector<std::size_t> inside(open.begin() + 1, open.begin() + static_cast<long>(j));
        std::vector<std::size_t> outside(open.begin() + static_cast<long>(j) + 1, open.end());
        total += c * wick_rec(cov, idx, inside) * wick_rec(cov, idx, outside);
    }
    return total;
}

} // namespace

Rational wick_moment(const std::vector<std::vector<Rational>>& covariance,
                     const std::vector<int>& indices) {
    const std::size_t n = covariance.size();
    for (const auto& row : covariance)
        if (row.size() != n) throw DomainError("wick_moment: covariance must be square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (covariance[i][j] != covariance[j][i])
                throw DomainError("wick_moment: covariance must be symmetric");
    for (int i : indices)
        if (i < 1 || static_cast<std::size_t>(i) > n)
            throw DomainError("wick_moment: index out of covariance range");
    if (indices.size() % 2 != 0) return Rational(0);

    // 1-based indices into the covariance
    std::vector<int> idx;
    idx.reserve(indices.size());
    for (int i : indices) idx.push_back(i - 1);
    std::vector<std::size_t> open(indices.size());
    for (std::size_t i = 0; i < open.size(); ++i) open[i] = i;
    return wick_rec(covariance, idx, open);
}

} // namespace ncchaos
