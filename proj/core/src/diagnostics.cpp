#include "ncchaos/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include "ncchaos/errors.hpp"
#include "ncchaos/polynomial.hpp"
#include "ncchaos/words.hpp"

namespace ncchaos {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::SemicircularConsistent: return "semicircular-consistent";
        case Verdict::FreePoissonConsistent: return "free-poisson-consistent";
        case Verdict::Inconsistent: return "inconsistent";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

ConvergenceRow make_row(const Kernel& f, const std::vector<int>& orders, const FreeLaw& inputs,
                        const SumMomentOptions& sumOpts) {
    ConvergenceRow row;
    row.N = f.N;
    for (int q = 1; q <= f.d - 1; ++q) row.contraction_norms[q] = contract(f, q).norm();
    for (int r = 1; r <= f.d; ++r) row.star_norms[r] = star_contract(f, r).norm();
    LiftedKernel lifted(f, orders);
    if (lifted.m % 2 == 0) row.midpoint_defect = lifted_midpoint_defect(lifted);
    try {
        ChebyshevSumSpec spec(f, orders);
        row.second_moment = sum_joint_moment({{spec, 2}}, inputs, sumOpts).value;
        row.third_moment = sum_joint_moment({{spec, 3}}, inputs, sumOpts).value;
        row.fourth_moment = sum_joint_moment({{spec, 4}}, inputs, sumOpts).value;
        row.moment_statistic = row.fourth_moment - 2.0 * row.third_moment;
    } catch (const ResourceError&) {
        row.partial = true;
    }
    return row;
}

bool strictly_decreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] < xs[i - 1])) return false;
    return true;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

struct ConditionLog {
    std::vector<std::string> lines;
    bool all_ok = true;

    void check(bool ok, const std::string& what) {
        lines.push_back(std::string(ok ? "satisfied: " : "violated: ") + what);
        all_ok = all_ok && ok;
    }
};

} // namespace

ConvergenceReport semicircular_criterion(const KernelFamily& family, const std::vector<int>& orders,
                                         const std::vector<int>& N_list,
                                         const CriterionOptions& opts) {
    ConvergenceReport report;
    FreeLaw inputs = semicircular(1);
    for (int N : N_list) report.rows.push_back(make_row(family(N), orders, inputs, opts.sum));

    if (report.rows.size() < 2) {
        report.verdict = Verdict::Inconclusive;
        report.conditions.push_back("inconclusive: a single N carries no trend");
        return report;
    }
    for (const auto& row : report.rows)
        if (row.partial) {
            report.verdict = Verdict::Inconclusive;
            report.conditions.push_back("inconclusive: moment budget exceeded at N=" +
                                        std::to_string(row.N));
            return report;
        }

    ConditionLog log;
    std::vector<double> m4;
    for (const auto& row : report.rows) m4.push_back(row.fourth_moment);
    log.check(strictly_decreasing(m4), "phi(Q^4) strictly decreasing across the sweep");
    log.check(std::fabs(m4.back() - 2.0) < opts.moment_threshold,
              "|phi(Q^4) - 2| = " + fmt(std::fabs(m4.back() - 2.0)) + " < " +
                  fmt(opts.moment_threshold) + " at largest N");
    for (const auto& [q, unused] : report.rows.front().contraction_norms) {
        (void)unused;
        std::vector<double> norms;
        for (const auto& row : report.rows) norms.push_back(row.contraction_norms.at(q));
        log.check(strictly_decreasing(norms),
                  "||f ~" + std::to_string(q) + "~ f|| strictly decreasing");
        log.check(norms.back() < opts.norm_threshold,
                  "||f ~" + std::to_string(q) + "~ f|| = " + fmt(norms.back()) + " < " +
                      fmt(opts.norm_threshold) + " at largest N");
    }
    report.conditions = log.lines;
    report.verdict = log.all_ok ? Verdict::SemicircularConsistent : Verdict::Inconsistent;
    return report;
}

ConvergenceReport free_poisson_criterion(const KernelFamily& family, const std::vector<int>& orders,
                                         const Rational& lambda, const std::vector<int>& N_list,
                                         const CriterionOptions& opts) {
    int d = static_cast<int>(orders.size());
    int m = 0;
    for (int h : orders) m += h;
    if (d % 2 != 0 || m % 2 != 0)
        throw DomainError("free_poisson_criterion: requires both the degree d and the total order "
                          "h_1+...+h_d to be even (d=" +
                          std::to_string(d) + ", sum=" + std::to_string(m) + ")");

    ConvergenceReport report;
    FreeLaw inputs = semicircular(1);
    for (int N : N_list) report.rows.push_back(make_row(family(N), orders, inputs, opts.sum));

    double lam = lambda.get_d();
    double target = 2.0 * lam * lam - lam;

    if (report.rows.size() < 2) {
        report.verdict = Verdict::Inconclusive;
        report.conditions.push_back("inconclusive: a single N carries no trend");
        return report;
    }
    for (const auto& row : report.rows)
        if (row.partial) {
            report.verdict = Verdict::Inconclusive;
            report.conditions.push_back("inconclusive: moment budget exceeded at N=" +
                                        std::to_string(row.N));
            return report;
        }

    ConditionLog log;
    for (int q = 1; q <= d - 1; ++q) {
        if (q == d / 2) continue;
        std::vector<double> norms;
        for (const auto& row : report.rows) norms.push_back(row.contraction_norms.at(q));
        log.check(strictly_decreasing(norms) && norms.back() < opts.norm_threshold,
                  "||f ~" + std::to_string(q) + "~ f|| decreasing and " + fmt(norms.back()) +
                      " < " + fmt(opts.norm_threshold));
    }
    {
        std::vector<double> star;
        for (const auto& row : report.rows) star.push_back(row.star_norms.at(d / 2 + 1));
        log.check(strictly_decreasing(star) && star.back() < opts.norm_threshold,
                  "||f *_{d/2+1}^{d/2} f|| decreasing and " + fmt(star.back()) + " < " +
                      fmt(opts.norm_threshold));
    }
    {
        std::vector<double> defect;
        for (const auto& row : report.rows) defect.push_back(row.midpoint_defect.value());
        log.check(strictly_decreasing(defect) && defect.back() < opts.norm_threshold,
                  "||f ~d/2~ f - f|| decreasing and " + fmt(defect.back()) + " < " +
                      fmt(opts.norm_threshold));
    }
    log.check(std::fabs(report.rows.back().second_moment - lam) < opts.moment_threshold,
              "|phi(Q^2) - lambda| = " + fmt(std::fabs(report.rows.back().second_moment - lam)) +
                  " < " + fmt(opts.moment_threshold));
    log.check(std::fabs(report.rows.back().moment_statistic - target) < opts.moment_threshold,
              "|phi(Q^4) - 2 phi(Q^3) - (2 lambda^2 - lambda)| = " +
                  fmt(std::fabs(report.rows.back().moment_statistic - target)) + " < " +
                  fmt(opts.moment_threshold));
    report.conditions = log.lines;
    report.verdict = log.all_ok ? Verdict::FreePoissonConsistent : Verdict::Inconsistent;
    return report;
}

namespace {

void require_admissible(const FreeLaw& law, int h) {
    IntPolynomial u = cheb_u(h);
    if (law.exact) {
        Rational mean = pushforward_moment(law, u, 1);
        if (mean != 0)
            throw DomainError("lindeberg_gap: U_" + std::to_string(h) + "(X) is not centered: phi = " +
                              to_fraction_string(mean));
        Rational var = pushforward_moment(law, u, 2);
        if (var != 1)
            throw DomainError("lindeberg_gap: U_" + std::to_string(h) +
                              "(X) does not have unit variance: phi(U^2) = " + to_fraction_string(var));
        return;
    }
    double mean = pushforward_moment_d(law, u, 1);
    double var = pushforward_moment_d(law, u, 2);
    if (std::fabs(mean) > 1e-9)
        throw DomainError("lindeberg_gap: U_" + std::to_string(h) + "(X) is not centered: phi = " + fmt(mean));
    if (std::fabs(var - 1.0) > 1e-9)
        throw DomainError("lindeberg_gap: U_" + std::to_string(h) +
                          "(X) does not have unit variance: phi(U^2) = " + fmt(var));
}

} // namespace

std::vector<LindebergRow> lindeberg_gap(const std::vector<std::pair<KernelFamily, int>>& specs,
                                        const std::vector<int>& orders, const FreeLaw& lawX,
                                        const FreeLaw& lawY, const std::vector<int>& N_list,
                                        const SumMomentOptions& opts) {
    for (int h : orders) require_admissible(lawX, h);
    require_admissible(lawY, 1); // centered, unit variance

    std::vector<LindebergRow> rows;
    for (int N : N_list) {
        std::vector<std::pair<ChebyshevSumSpec, int>> built;
        double tauMax = 0.0;
        int mTotal = 0;
        for (const auto& [family, exponent] : specs) {
            Kernel f = family(N);
            tauMax = std::max(tauMax, tau(f));
            mTotal += exponent;
            built.emplace_back(ChebyshevSumSpec(f, orders), exponent);
        }
        LindebergRow row;
        row.N = N;
        row.m = mTotal;
        row.moment_x = sum_joint_moment(built, lawX, opts).value;
        row.moment_y = sum_joint_moment_identity(built, lawY, opts).value;
        row.gap = std::fabs(row.moment_x - row.moment_y);
        row.tau_max = tauMax;
        row.ratio = row.gap / std::sqrt(tauMax);
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::vector<int> shifted(const std::vector<int>& s) {
    std::vector<int> out;
    out.reserve(s.size());
    for (int x : s) out.push_back(x + 1);
    return out;
}

std::vector<int> unite(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

ExponentPlan iterated_cs_plan(int n) {
    if (n < 2) throw DomainError("iterated_cs_plan: n must be at least 2");
    if (n == 2) return {2, {{0}, {0}}};
    if (n == 3) return {3, {{0}, {1}, {1}}};

    ExponentPlan plan;
    plan.n = n;
    plan.sets.assign(static_cast<std::size_t>(n), {});
    auto I = [&plan](int l) -> std::vector<int>& { return plan.sets[static_cast<std::size_t>(l - 1)]; };

    if (n % 2 == 0) {
        // split (c_1..c_{k+1})(c_{k+2}..c_n); both halves fold into strings of
        // length n-2 whose plan is reused positionally
        int k = n / 2 - 1;
        ExponentPlan sub = iterated_cs_plan(n - 2);
        auto S = [&sub](int l) -> const std::vector<int>& { return sub.sets[static_cast<std::size_t>(l - 1)]; };
        I(1) = shifted(S(1));
        I(k + 1) = shifted(S(k + 1));
        for (int l = 2; l <= k; ++l) I(l) = unite(S(l), S(n - l));
        I(k + 2) = shifted(S(1));
        I(n) = shifted(S(k + 1));
        for (int h = k + 3; h <= n - 1; ++h) I(h) = unite(S(h - k - 1), S(n - h + k + 1));
    } else {
        // split (c_1..c_{(n-1)/2})(c_{(n+1)/2}..c_n): the left fold has length
        // n-3, the right fold length n-1
        int k = (n - 3) / 2;
        ExponentPlan subA = iterated_cs_plan(n - 3);
        ExponentPlan subB = iterated_cs_plan(n - 1);
        auto A = [&subA](int l) -> const std::vector<int>& { return subA.sets[static_cast<std::size_t>(l - 1)]; };
        auto B = [&subB](int l) -> const std::vector<int>& { return subB.sets[static_cast<std::size_t>(l - 1)]; };
        I(1) = shifted(A(1));
        I(k + 1) = shifted(A(k + 1));
        for (int l = 2; l <= k; ++l) I(l) = unite(A(l), A(n - 1 - l));
        I(k + 2) = shifted(B(1));
        I(n) = shifted(B(k + 2));
        for (int h = k + 3; h <= n - 1; ++h) I(h) = unite(B(h - k - 1), B(n + k + 2 - h));
    }
    for (auto& s : plan.sets) std::sort(s.begin(), s.end());
    return plan;
}

long long exponent_plan_target(int n, int l) {
    if (n % 2 == 0) return 1LL << (n / 2 - 1);
    if (l <= (n - 1) / 2) return 1LL << ((n - 3) / 2);
    return 1LL << ((n - 1) / 2);
}

CsCheckResult iterated_cs_check(const ExponentPlan& plan, const std::vector<Eigen::MatrixXd>& c) {
    const int n = plan.n;
    if (static_cast<int>(c.size()) != n)
        throw DomainError("iterated_cs_check: expected " + std::to_string(n) + " matrices");
    const long dim = c.front().rows();
    for (const auto& mat : c)
        if (mat.rows() != dim || mat.cols() != dim)
            throw DomainError("iterated_cs_check: matrices must be square and share a dimension");

    auto tr = [dim](const Eigen::MatrixXd& mat) { return mat.trace() / static_cast<double>(dim); };

    Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(dim, dim);
    for (const auto& mat : c) prod = prod * mat;

    CsCheckResult result;
    result.lhs = std::fabs(tr(prod));
    double logRhs = 0.0;
    for (int l = 1; l <= n; ++l) {
        double w;
        if (n % 2 == 0) w = std::ldexp(1.0, -n / 2);
        else if (l <= (n - 1) / 2) w = std::ldexp(1.0, -(n - 1) / 2);
        else w = std::ldexp(1.0, -(n + 1) / 2);
        Eigen::MatrixXd base = c[static_cast<std::size_t>(l - 1)] *
                               c[static_cast<std::size_t>(l - 1)].transpose();
        for (int s : plan.sets[static_cast<std::size_t>(l - 1)]) {
            Eigen::MatrixXd power = base;
            for (int t = 0; t < s; ++t) power = power * power;
            // traces of powers of c c^T are nonnegative
            logRhs += w * std::log(std::max(tr(power), 1e-300));
        }
    }
    result.rhs = std::exp(logRhs);
    result.holds = result.lhs <= result.rhs + 1e-9;
    return result;
}

} // namespace ncchaos
