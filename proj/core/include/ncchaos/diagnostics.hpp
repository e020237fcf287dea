#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncchaos/freelaw.hpp"
#include "ncchaos/kernel.hpp"
#include "ncchaos/sum_moment.hpp"

namespace ncchaos {

using KernelFamily = std::function<Kernel(int)>; // N -> f_N

enum class Verdict { SemicircularConsistent, FreePoissonConsistent, Inconsistent, Inconclusive };
std::string to_string(Verdict v);

struct ConvergenceRow {
    int N = 0;
    bool partial = false; // moment computation skipped (budget)
    double second_moment = 0.0;
    double third_moment = 0.0;
    double fourth_moment = 0.0;
    std::map<int, double> contraction_norms; // q -> ||f ~q~ f||, q = 1..d-1
    std::map<int, double> star_norms;        // r -> ||f *_r^{r-1} f||, r = 1..d
    std::optional<double> midpoint_defect;   // ||f ~d/2~ f - f|| (even d)
    double moment_statistic = 0.0;           // phi(Q^4) - 2 phi(Q^3)
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> conditions; // satisfied/violated, human readable
};

struct CriterionOptions {
    double moment_threshold = 0.15; // |phi(Q^4) - target| at the largest N
    double norm_threshold = 0.15;   // contraction norms at the largest N
    SumMomentOptions sum;
};

// Finite-N surrogate of the fourth-moment theorem for semicircular limits:
// moments of Q_N^{(h)}(f_N; S_1..S_N) plus all contraction norms, with a
// trend-based verdict.
ConvergenceReport semicircular_criterion(const KernelFamily& family, const std::vector<int>& orders,
                                         const std::vector<int>& N_list,
                                         const CriterionOptions& opts = {});

// Free-Poisson counterpart. Both d and h_1+..+h_d must be even; the moment
// statistic phi(Q^4) - 2 phi(Q^3) is compared against 2 lambda^2 - lambda.
ConvergenceReport free_poisson_criterion(const KernelFamily& family, const std::vector<int>& orders,
                                         const Rational& lambda, const std::vector<int>& N_list,
                                         const CriterionOptions& opts = {});

struct LindebergRow {
    int N = 0;
    int m = 0;
    double moment_x = 0.0;
    double moment_y = 0.0;
    double gap = 0.0;     // |moment_x - moment_y|
    double tau_max = 0.0; // max_j tau(f_N^{(j)})
    double ratio = 0.0;   // gap / sqrt(tau_max)
};

// Invariance-principle gap: X side uses letters U_{h_j}(X), Y side plain
// letters in the Y law. Checks that every U_{h_j}(X) is centered with unit
// variance (and Y likewise) before evaluating.
std::vector<LindebergRow> lindeberg_gap(const std::vector<std::pair<KernelFamily, int>>& specs,
                                        const std::vector<int>& orders, const FreeLaw& lawX,
                                        const FreeLaw& lawY, const std::vector<int>& N_list,
                                        const SumMomentOptions& opts = {});

// Exponent multisets I_l for the iterated Cauchy-Schwarz bound on
// |phi(c_1 .. c_n)|, produced by the fixed halving association (split at the
// midpoint, recurse).
struct ExponentPlan {
    int n = 0;
    std::vector<std::vector<int>> sets; // sets[l-1] = I_l, ascending
};

ExponentPlan iterated_cs_plan(int n);

// sum over I_l of 2^{s_j}, as mandated per parity case.
long long exponent_plan_target(int n, int l);

struct CsCheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false; // lhs <= rhs + 1e-9
};

// Concrete check of the bound with matrices under the normalized trace.
CsCheckResult iterated_cs_check(const ExponentPlan& plan,
                                const std::vector<Eigen::MatrixXd>& c);

} // namespace ncchaos
