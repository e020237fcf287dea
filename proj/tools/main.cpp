// ncchaos: exact workbench for moments of Chebyshev sums in freely
// independent variables: non-crossing partitions, free cumulants, kernel
// contractions, convergence diagnostics, and a random-matrix cross-check.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "ncchaos/diagnostics.hpp"
#include "ncchaos/errors.hpp"
#include "ncchaos/freelaw.hpp"
#include "ncchaos/kernel.hpp"
#include "ncchaos/matrixmodel.hpp"
#include "ncchaos/ncpart.hpp"
#include "ncchaos/polynomial.hpp"
#include "ncchaos/reference_suite.hpp"
#include "ncchaos/rng.hpp"
#include "ncchaos/sum_moment.hpp"
#include "ncchaos/words.hpp"

using namespace ncchaos;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

// shortest decimal form that parses back to the same double
std::string fmt(double x) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw DomainError("empty entry in integer list '" + s + "'");
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw DomainError("empty integer list");
    return out;
}

// "4..10" or "4,6,8"
std::vector<int> parse_n_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) return parse_int_list(s);
    int lo = std::stoi(s.substr(0, dots));
    int hi = std::stoi(s.substr(dots + 2));
    if (hi < lo) throw DomainError("empty range '" + s + "'");
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

struct OutputTarget {
    std::string path; // empty = stdout

    void write(const std::string& content) const {
        if (path.empty()) {
            std::fputs(content.c_str(), stdout);
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw DomainError("cannot open output file '" + path + "'");
        f << content;
    }
};

Kernel load_kernel(const std::string& kernelFile, const std::string& family, int N) {
    if (!kernelFile.empty()) {
        std::ifstream f(kernelFile);
        if (!f) throw DomainError("cannot read kernel file '" + kernelFile + "'");
        json j;
        f >> j;
        return kernel_from_json(j);
    }
    if (!family.empty()) {
        if (N <= 0) throw DomainError("--family requires --N");
        return kernel_family(family, N);
    }
    throw DomainError("either --kernel <file.json> or --family <name> is required");
}

KernelFamily family_of(const std::string& name) {
    return [name](int N) { return kernel_family(name, N); };
}

std::string csv_kernel(const Kernel& f) {
    std::ostringstream os;
    for (int i = 1; i <= f.d; ++i) os << "i" << i << ",";
    os << "value\n";
    for (const auto& [idx, v] : f.entries) {
        for (auto i : idx) os << i << ",";
        os << fmt(v) << "\n";
    }
    if (f.d == 0) os << fmt(f.at({})) << "\n";
    return os.str();
}

std::string csv_report(const ConvergenceReport& rep) {
    std::ostringstream os;
    os << "N,m2,m3,m4,stat";
    if (!rep.rows.empty()) {
        for (const auto& [q, v] : rep.rows.front().contraction_norms) os << ",cnorm_q" << q;
        for (const auto& [r, v] : rep.rows.front().star_norms) os << ",snorm_r" << r;
        if (rep.rows.front().midpoint_defect) os << ",defect";
    }
    os << "\n";
    for (const auto& row : rep.rows) {
        os << row.N << "," << fmt(row.second_moment) << "," << fmt(row.third_moment) << ","
           << fmt(row.fourth_moment) << "," << fmt(row.moment_statistic);
        for (const auto& [q, v] : row.contraction_norms) os << "," << fmt(v);
        for (const auto& [r, v] : row.star_norms) os << "," << fmt(v);
        if (row.midpoint_defect) os << "," << fmt(*row.midpoint_defect);
        os << "\n";
    }
    return os.str();
}

json verdict_json(const ConvergenceReport& rep) {
    return json{{"schema_version", kSchemaVersion},
                {"verdict", to_string(rep.verdict)},
                {"conditions", rep.conditions}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact moments, contraction diagnostics and matrix simulations for "
                 "Chebyshev sums of freely independent variables"};
    app.require_subcommand(1);

    int threads = 0;
    int ncCap = kDefaultNcCap;
    std::uint64_t tupleBudget = kDefaultTupleBudget;
    std::uint64_t seed = 12345;
    std::string outPath;
    std::string format = "csv";
    app.add_option("--threads", threads, "worker threads (0 = NCCHAOS_THREADS or hardware)");
    app.add_option("--nc-cap", ncCap, "non-crossing enumeration cap");
    app.add_option("--tuple-budget", tupleBudget, "tuple budget for moment sums");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--out", outPath, "write the primary artifact (CSV) to this file");
    app.add_option("--format", format, "csv|json for listing commands")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- nc ----
    auto* nc = app.add_subcommand("nc", "non-crossing partition counts and listings");
    int ncN = 0;
    bool ncPairings = false, ncNoSingletons = false;
    int ncBlocks = 0;
    auto* ncCount = nc->add_subcommand("count", "count non-crossing partitions");
    ncCount->add_option("--n", ncN, "ground set size")->required();
    ncCount->add_flag("--pairings", ncPairings, "count pairings only");
    ncCount->add_flag("--no-singletons", ncNoSingletons, "exclude partitions with singleton blocks");
    ncCount->add_option("--blocks", ncBlocks, "restrict to this many blocks");
    auto* ncList = nc->add_subcommand("list", "list partitions as JSON");
    ncList->add_option("--n", ncN, "ground set size")->required();
    ncList->add_flag("--pairings", ncPairings, "pairings only");
    auto* ncCatalan = nc->add_subcommand("catalan", "print the Catalan number C_m");
    int catalanM = 0;
    ncCatalan->add_option("--m", catalanM, "index")->required();

    // ---- law ----
    auto* law = app.add_subcommand("law", "free laws: cumulants and moments");
    std::string lawName = "semicircular";
    int lawOrder = kDefaultLawOrder;
    int lawMoments = 8;
    auto* lawShow = law->add_subcommand("show", "print a law as JSON");
    lawShow->add_option("--law", lawName,
                        "semicircular[:var] | free-poisson:lambda | bernoulli-sym | inline JSON");
    lawShow->add_option("--order", lawOrder, "cumulant order K");
    lawShow->add_option("--moments", lawMoments, "also derive this many moments");

    // ---- cheb ----
    auto* cheb = app.add_subcommand("cheb", "Chebyshev polynomials of the second kind");
    int chebH = 0, chebKmax = 8;
    std::string chebLaw = "semicircular";
    auto* chebCoeffs = cheb->add_subcommand("coeffs", "coefficients (CSV: degree,coefficient)");
    chebCoeffs->add_option("--order", chebH, "order h")->required();
    auto* chebMoments = cheb->add_subcommand("moments", "moment table (CSV: k,value for k = 0..kmax)");
    chebMoments->add_option("--order", chebH, "order h")->required();
    chebMoments->add_option("--law", chebLaw, "law of X");
    chebMoments->add_option("--kmax", chebKmax, "largest power");

    // ---- kernel ----
    auto* kernel = app.add_subcommand("kernel", "kernel inspection: validate, influence, contractions");
    std::string kernelFile, familyName;
    int kernelN = 0, contractQ = -1, starR = -1;
    std::string sweepRange, ordersStr = "1,1";
    auto addKernelSource = [&](CLI::App* cmd) {
        cmd->add_option("--kernel", kernelFile, "kernel JSON file");
        cmd->add_option("--family", familyName, "built-in family name");
        cmd->add_option("--N", kernelN, "index range for --family");
    };
    auto* kValidate = kernel->add_subcommand("validate", "mirror/diagonal/variance report (JSON)");
    addKernelSource(kValidate);
    auto* kInfluence = kernel->add_subcommand("influence", "influence profile (CSV: i,influence; final row tau,<value>)");
    addKernelSource(kInfluence);
    auto* kContract = kernel->add_subcommand("contract", "contraction entries (CSV: i1,..,ik,value)");
    addKernelSource(kContract);
    kContract->add_option("--q", contractQ, "contraction order");
    kContract->add_option("--star-r", starR, "star contraction order (instead of --q)");
    auto* kSweep = kernel->add_subcommand("sweep", "norm sweep (CSV: N,variance,cnorm_q*,snorm_r*[,defect])");
    kSweep->add_option("--family", familyName, "built-in family name")->required();
    kSweep->add_option("--N", sweepRange, "range a..b")->required();
    kSweep->add_option("--orders", ordersStr, "order vector h1,h2,..");

    // ---- moment ----
    auto* moment = app.add_subcommand("moment", "exact moments of words and Chebyshev sums");
    std::string wordStr, lawXName = "semicircular", lawYName;
    auto* mWord = moment->add_subcommand("word", "phi of a word (JSON envelope)");
    mWord->add_option("--word", wordStr, "letters var:order, e.g. 1:1,2:1,2:1,1:1")->required();
    mWord->add_option("--law", lawXName, "shared law of the variables");
    auto* mSum = moment->add_subcommand("sum", "phi(Q^m) for a Chebyshev sum (JSON envelope)");
    addKernelSource(mSum);
    mSum->add_option("--orders", ordersStr, "order vector");
    std::string sumMStr = "2";
    mSum->add_option("--m", sumMStr, "exponent or exponent list (joint product)");
    mSum->add_option("--law", lawXName, "input law");

    // ---- diag ----
    auto* diag = app.add_subcommand("diag", "finite-N convergence diagnostics");
    std::string diagRange = "4..8", lambdaStr = "1", mListStr = "4";
    double momentThreshold = 0.15, normThreshold = 0.15;
    int csN = 5, csTrials = 100, csDim = 4;
    auto* dSemi = diag->add_subcommand("semicircle", "trend report (CSV: N,m2,m3,m4,stat,cnorm_q*,snorm_r*[,defect]; verdict JSON on stdout)");
    dSemi->add_option("--kernel-family", familyName, "built-in family")->required();
    dSemi->add_option("--orders", ordersStr, "order vector");
    dSemi->add_option("--N", diagRange, "range a..b");
    dSemi->add_option("--moment-threshold", momentThreshold, "proximity threshold on |phi(Q^4)-2|");
    dSemi->add_option("--norm-threshold", normThreshold, "proximity threshold on contraction norms");
    auto* dPoisson = diag->add_subcommand("poisson", "free-Poisson criterion (CSV as in semicircle; verdict JSON on stdout)");
    dPoisson->add_option("--kernel-family", familyName, "built-in family");
    dPoisson->add_option("--kernel", kernelFile, "kernel JSON file (single N)");
    dPoisson->add_option("--orders", ordersStr, "order vector");
    dPoisson->add_option("--lambda", lambdaStr, "free-Poisson parameter");
    dPoisson->add_option("--N", diagRange, "range a..b");
    dPoisson->add_option("--moment-threshold", momentThreshold, "threshold on the moment statistic");
    dPoisson->add_option("--norm-threshold", normThreshold, "threshold on contraction norms");
    auto* dLind = diag->add_subcommand("lindeberg", "gap table (CSV: N,m,moment_x,moment_y,gap,tau_max,ratio)");
    dLind->add_option("--kernel-family", familyName, "built-in family")->required();
    dLind->add_option("--orders", ordersStr, "order vector");
    dLind->add_option("--lawX", lawXName, "law of the X side");
    dLind->add_option("--lawY", lawYName, "law of the Y side")->required();
    dLind->add_option("--m", mListStr, "exponent list, e.g. 3,4");
    dLind->add_option("--N", diagRange, "range a..b");
    auto* dCs = diag->add_subcommand("cs", "trace checks (CSV: trial,n,dim,lhs,rhs,holds; plan JSON on stdout)");
    dCs->add_option("--n", csN, "word length");
    dCs->add_option("--trials", csTrials, "random matrix trials");
    dCs->add_option("--dim", csDim, "matrix dimension");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "random-matrix cross-check (CSV: trial,value plus mean and stderr rows)");
    std::string kindStr = "gue";
    int simDim = 300, simTrials = 10, simN = 0, simM = 4;
    double simLambda = 1.0;
    simulate->add_option("--kind", kindStr, "gue | wishart")->check(CLI::IsMember({"gue", "wishart"}));
    simulate->add_option("--dim", simDim, "matrix dimension");
    simulate->add_option("--trials", simTrials, "independent repetitions");
    simulate->add_option("--lambda", simLambda, "wishart aspect ratio");
    simulate->add_option("--kernel,--spec", kernelFile, "kernel JSON file");
    simulate->add_option("--family", familyName, "built-in family");
    simulate->add_option("--N", simN, "index range for --family");
    simulate->add_option("--orders", ordersStr, "order vector");
    simulate->add_option("--m", simM, "exponent");

    // ---- paper-suite ----
    auto* suite = app.add_subcommand("paper-suite",
                                     "run the built-in verification battery and report pass/fail");

    // global flags remain usable after any subcommand
    std::function<void(CLI::App*)> enableFallthrough = [&](CLI::App* cmd) {
        for (CLI::App* sub : cmd->get_subcommands({})) {
            sub->fallthrough(true);
            enableFallthrough(sub);
        }
    };
    enableFallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    }

    OutputTarget out{outPath};
    SumMomentOptions sumOpts;
    sumOpts.threads = threads;
    sumOpts.tuple_budget = tupleBudget;

    try {
        if (ncCount->parsed()) {
            long long count = 0;
            if (ncBlocks > 0 || ncNoSingletons || ncPairings) {
                for_each_nc(
                    ncN,
                    [&](const std::vector<std::vector<int>>& blocks) {
                        if (ncBlocks > 0 && static_cast<int>(blocks.size()) != ncBlocks) return;
                        for (const auto& b : blocks) {
                            if (ncNoSingletons && b.size() == 1) return;
                            if (ncPairings && b.size() != 2) return;
                        }
                        ++count;
                    },
                    ncCap);
            } else {
                for_each_nc(ncN, [&](const std::vector<std::vector<int>>&) { ++count; }, ncCap);
            }
            out.write(std::to_string(count) + "\n");
        } else if (ncList->parsed()) {
            json arr = json::array();
            auto push = [&arr](const std::vector<std::vector<int>>& blocks) { arr.push_back(blocks); };
            if (ncPairings) for_each_nc2(ncN, push, 2 * ncCap);
            else for_each_nc(ncN, push, ncCap);
            out.write(arr.dump() + "\n");
        } else if (ncCatalan->parsed()) {
            out.write(catalan(catalanM).get_str() + "\n");
        } else if (lawShow->parsed()) {
            FreeLaw l = law_from_name(lawName, lawOrder);
            json j = law_to_json(l);
            j["schema_version"] = kSchemaVersion;
            if (lawMoments > 0) {
                std::vector<std::string> ms;
                for (int k = 1; k <= std::min(lawMoments, l.order); ++k) {
                    if (l.exact) ms.push_back(to_fraction_string(moments_from_cumulants(l, k)));
                    else ms.push_back(fmt(moments_from_cumulants_d(l, k)));
                }
                j["moments"] = ms;
            }
            out.write(j.dump(2) + "\n");
        } else if (chebCoeffs->parsed()) {
            IntPolynomial u = cheb_u(chebH);
            if (format == "json") {
                json j{{"schema_version", kSchemaVersion}, {"order", chebH}, {"coeffs", u.coeffs}};
                out.write(j.dump() + "\n");
            } else {
                std::ostringstream os;
                os << "degree,coefficient\n";
                for (int k = 0; k <= u.degree(); ++k) os << k << "," << u.coeff(k) << "\n";
                out.write(os.str());
            }
        } else if (chebMoments->parsed()) {
            FreeLaw l = law_from_name(chebLaw, kDefaultLawOrder);
            IntPolynomial u = cheb_u(chebH);
            std::ostringstream os;
            os << "k,value\n";
            for (int k = 0; k <= chebKmax; ++k) {
                if (l.exact) os << k << "," << to_fraction_string(pushforward_moment(l, u, k)) << "\n";
                else os << k << "," << fmt(pushforward_moment_d(l, u, k)) << "\n";
            }
            out.write(os.str());
        } else if (kValidate->parsed()) {
            ValidationReport rep = validate(load_kernel(kernelFile, familyName, kernelN));
            json j{{"schema_version", kSchemaVersion},
                   {"mirror", rep.mirror},
                   {"diagonal_free", rep.diagonal_free},
                   {"variance", rep.variance}};
            out.write(j.dump(2) + "\n");
        } else if (kInfluence->parsed()) {
            Kernel f = load_kernel(kernelFile, familyName, kernelN);
            auto profile = influence_profile(f);
            if (format == "json") {
                json j{{"schema_version", kSchemaVersion}, {"influence", profile}, {"tau", tau(f)}};
                out.write(j.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "i,influence\n";
                for (int i = 1; i <= f.N; ++i)
                    os << i << "," << fmt(profile[static_cast<std::size_t>(i - 1)]) << "\n";
                os << "tau," << fmt(tau(f)) << "\n";
                out.write(os.str());
            }
        } else if (kContract->parsed()) {
            Kernel f = load_kernel(kernelFile, familyName, kernelN);
            if ((contractQ < 0) == (starR < 0))
                throw DomainError("exactly one of --q or --star-r is required");
            Kernel g = (contractQ >= 0) ? contract(f, contractQ) : star_contract(f, starR);
            if (format == "json") {
                json j = kernel_to_json(g);
                j["schema_version"] = kSchemaVersion;
                out.write(j.dump() + "\n");
            } else {
                out.write(csv_kernel(g));
            }
        } else if (kSweep->parsed()) {
            std::vector<int> orders = parse_int_list(ordersStr);
            std::vector<int> Ns = parse_n_range(sweepRange);
            std::ostringstream os;
            Kernel probe = kernel_family(familyName, Ns.front());
            int d = probe.d;
            int mOrder = std::accumulate(orders.begin(), orders.end(), 0);
            os << "N,variance";
            for (int q = 1; q <= d - 1; ++q) os << ",cnorm_q" << q;
            for (int r = 1; r <= d; ++r) os << ",snorm_r" << r;
            if (mOrder % 2 == 0) os << ",defect";
            os << "\n";
            for (int N : Ns) {
                Kernel f = kernel_family(familyName, N);
                os << N << "," << fmt(f.variance());
                for (int q = 1; q <= d - 1; ++q) os << "," << fmt(contract(f, q).norm());
                for (int r = 1; r <= d; ++r) os << "," << fmt(star_contract(f, r).norm());
                if (mOrder % 2 == 0)
                    os << "," << fmt(lifted_midpoint_defect(LiftedKernel(f, orders)));
                os << "\n";
            }
            out.write(os.str());
        } else if (mWord->parsed()) {
            FreeLaw l = law_from_name(lawXName, kDefaultLawOrder);
            Word w;
            int maxVar = 0;
            std::stringstream ss(wordStr);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto colon = item.find(':');
                int var = std::stoi(item.substr(0, colon));
                int order = colon == std::string::npos ? 1 : std::stoi(item.substr(colon + 1));
                if (var < 1) throw DomainError("word variables are 1-based");
                maxVar = std::max(maxVar, var);
                w.letters.push_back(Letter{var - 1, cheb_u(order)});
            }
            VariableFamily fam = VariableFamily::iid(l, std::max(maxVar, 1));
            MomentValue v = word_moment(fam, w);
            json j{{"schema_version", kSchemaVersion},
                   {"value", v.value_d},
                   {"exact", v.exact},
                   {"letters", w.size()}};
            if (v.exact) j["value_exact"] = to_fraction_string(v.value_q);
            out.write(j.dump(2) + "\n");
        } else if (mSum->parsed()) {
            Kernel f = load_kernel(kernelFile, familyName, kernelN);
            ChebyshevSumSpec spec(std::move(f), parse_int_list(ordersStr));
            FreeLaw l = law_from_name(lawXName, kDefaultLawOrder);
            std::vector<std::pair<ChebyshevSumSpec, int>> factors;
            for (int m : parse_int_list(sumMStr)) factors.emplace_back(spec, m);
            SumMomentResult r = sum_joint_moment(factors, l, sumOpts);
            json j{{"schema_version", kSchemaVersion},
                   {"value", r.value},
                   {"exact", r.exact},
                   {"patterns_evaluated", r.patterns_evaluated},
                   {"tuples_visited", r.tuples_visited}};
            out.write(j.dump(2) + "\n");
        } else if (dSemi->parsed()) {
            CriterionOptions opts;
            opts.moment_threshold = momentThreshold;
            opts.norm_threshold = normThreshold;
            opts.sum = sumOpts;
            ConvergenceReport rep = semicircular_criterion(
                family_of(familyName), parse_int_list(ordersStr), parse_n_range(diagRange), opts);
            out.write(csv_report(rep));
            std::cout << verdict_json(rep).dump() << "\n";
        } else if (dPoisson->parsed()) {
            CriterionOptions opts;
            opts.moment_threshold = momentThreshold;
            opts.norm_threshold = normThreshold;
            opts.sum = sumOpts;
            KernelFamily fam;
            std::vector<int> Ns;
            if (!kernelFile.empty()) {
                Kernel f = load_kernel(kernelFile, "", 0);
                Ns = {f.N};
                fam = [f](int) { return f; };
            } else {
                if (familyName.empty()) throw DomainError("--kernel-family or --kernel is required");
                fam = family_of(familyName);
                Ns = parse_n_range(diagRange);
            }
            ConvergenceReport rep = free_poisson_criterion(fam, parse_int_list(ordersStr),
                                                           rational_from_string(lambdaStr), Ns, opts);
            out.write(csv_report(rep));
            std::cout << verdict_json(rep).dump() << "\n";
        } else if (dLind->parsed()) {
            FreeLaw lx = law_from_name(lawXName, kDefaultLawOrder);
            FreeLaw ly = law_from_name(lawYName, kDefaultLawOrder);
            std::vector<int> orders = parse_int_list(ordersStr);
            std::vector<int> Ns = parse_n_range(diagRange);
            std::ostringstream os;
            os << "N,m,moment_x,moment_y,gap,tau_max,ratio\n";
            double worst = 0.0;
            for (int m : parse_int_list(mListStr)) {
                auto rows = lindeberg_gap({{family_of(familyName), m}}, orders, lx, ly, Ns, sumOpts);
                for (const auto& r : rows) {
                    os << r.N << "," << r.m << "," << fmt(r.moment_x) << "," << fmt(r.moment_y)
                       << "," << fmt(r.gap) << "," << fmt(r.tau_max) << "," << fmt(r.ratio) << "\n";
                    worst = std::max(worst, r.ratio);
                }
            }
            out.write(os.str());
            json j{{"schema_version", kSchemaVersion}, {"max_ratio", worst}};
            std::cout << j.dump() << "\n";
        } else if (dCs->parsed()) {
            ExponentPlan plan = iterated_cs_plan(csN);
            std::ostringstream os;
            os << "trial,n,dim,lhs,rhs,holds\n";
            Rng rng(seed);
            int violations = 0;
            for (int t = 0; t < csTrials; ++t) {
                std::vector<Eigen::MatrixXd> mats;
                for (int i = 0; i < csN; ++i) {
                    Eigen::MatrixXd m(csDim, csDim);
                    for (int a = 0; a < csDim; ++a)
                        for (int b = 0; b < csDim; ++b) m(a, b) = rng.next_real(-1.0, 1.0);
                    mats.push_back(std::move(m));
                }
                CsCheckResult res = iterated_cs_check(plan, mats);
                if (!res.holds) ++violations;
                os << t << "," << csN << "," << csDim << "," << fmt(res.lhs) << "," << fmt(res.rhs)
                   << "," << (res.holds ? 1 : 0) << "\n";
            }
            out.write(os.str());
            json j{{"schema_version", kSchemaVersion},
                   {"plan", plan.sets},
                   {"trials", csTrials},
                   {"violations", violations}};
            std::cout << j.dump() << "\n";
        } else if (simulate->parsed()) {
            Kernel f = load_kernel(kernelFile, familyName, simN);
            ChebyshevSumSpec spec(std::move(f), parse_int_list(ordersStr));
            MatrixEnsembleSpec espec;
            espec.dim = simDim;
            espec.count = spec.kernel.N;
            espec.kind =
                kindStr == "gue" ? EnsembleKind::GaussianHermitian : EnsembleKind::ShiftedWishart;
            espec.lambda = simLambda;
            std::ostringstream os;
            os << "trial,value\n";
            double sum = 0.0, sumsq = 0.0;
            for (int t = 0; t < simTrials; ++t) {
                espec.seed = seed + static_cast<std::uint64_t>(t);
                double v = empirical_sum_moment(spec, sample_family(espec), simM);
                os << t << "," << fmt(v) << "\n";
                sum += v;
                sumsq += v * v;
            }
            double mean = sum / simTrials;
            double var = simTrials > 1 ? (sumsq - simTrials * mean * mean) / (simTrials - 1) : 0.0;
            double stderrOfMean = simTrials > 1 ? std::sqrt(std::max(var, 0.0) / simTrials) : 0.0;
            os << "mean," << fmt(mean) << "\n";
            os << "stderr," << fmt(stderrOfMean) << "\n";
            out.write(os.str());
        } else if (suite->parsed()) {
            bool allPass = true;
            for (const ReferenceCheck& c : run_reference_suite(seed)) {
                std::printf("[%s] %s (%.0f ms) %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.ms,
                            c.detail.c_str());
                allPass = allPass && c.pass;
            }
            return allPass ? 0 : 1;
        }
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return 3;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}
