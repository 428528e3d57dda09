// Acceptance suite: runs every release criterion end to end and prints one
// PASS/FAIL line each. Exit status is the number of failed criteria.
//
// Usage: relimp_acceptance [--cli <path-to-relimp-binary>]

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "relimp/cli.hpp"
#include "relimp/csv.hpp"
#include "relimp/dominance.hpp"
#include "relimp/metrics.hpp"
#include "relimp/ortho.hpp"
#include "relimp/realloc.hpp"
#include "relimp/report.hpp"
#include "relimp/rng.hpp"
#include "relimp/simgen.hpp"

using namespace relimp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::filesystem::path work_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "relimp_acceptance";
    std::filesystem::create_directories(dir);
    return dir;
}

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    return status;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

// Random well-conditioned correlation matrix through the project's own
// generators (simplex spectrum + alternating projections).
CorrelationMatrix random_correlation(int p, RngStream stream, double lambda_floor = 1e-3) {
    for (int attempt = 0;; ++attempt) {
        const auto spectrum = sample_simplex(p, stream.derive("spec", attempt));
        if (spectrum.lambdas(p - 1) < lambda_floor) continue;
        return map_correlation(spectrum, 0, stream.derive("mat", attempt));
    }
}

Vector random_rho_xy(const CorrelationMatrix& corr, RngStream stream) {
    const int p = corr.p();
    Vector u(p);
    for (int i = 0; i < p; ++i) u(i) = stream.normal();
    u.normalize();
    const double r2 = 0.05 + 0.9 * stream.uniform01();
    const Matrix loading =
        corr.eigvecs() * corr.lambdas().cwiseSqrt().asDiagonal() * corr.eigvecs().transpose();
    return loading * (std::sqrt(r2) * u);
}

// Independent Shapley oracle: average of sequential increments over all p!
// orderings, with fresh fully pivoted solves per subset.
double oracle_subset_r2(const Matrix& sigma, const Vector& rho, const std::vector<int>& subset) {
    if (subset.empty()) return 0.0;
    const int k = static_cast<int>(subset.size());
    Matrix block(k, k);
    Vector r(k);
    for (int a = 0; a < k; ++a) {
        r(a) = rho(subset[a]);
        for (int b = 0; b < k; ++b) block(a, b) = sigma(subset[a], subset[b]);
    }
    return r.dot(block.fullPivLu().solve(r));
}

Vector oracle_permutation_gd(const Matrix& sigma, const Vector& rho) {
    const int p = static_cast<int>(sigma.rows());
    std::vector<int> perm(p);
    for (int i = 0; i < p; ++i) perm[i] = i;
    Vector total = Vector::Zero(p);
    long count = 0;
    do {
        std::vector<int> prefix;
        double previous = 0.0;
        for (int idx : perm) {
            prefix.push_back(idx);
            const double current = oracle_subset_r2(sigma, rho, prefix);
            total(idx) += current - previous;
            previous = current;
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / static_cast<double>(count);
}

// --- criterion 1 -----------------------------------------------------------

// Two of the six reference cells below are not reachable from this design,
// at any seed, and the checks are kept as stated rather than loosened:
//  - corpa/pc and regpa/pc: with column-normalized squared loadings the
//    lambda_j normalizer cancels, so CorPA(PC) == RegPA(PC) == V.^2 exactly,
//    which lands on the gda/pc reference cell (~0.15/0.29). Hitting the
//    0.20/0.01 reference instead requires weighting the reallocation with
//    the unrotated basis contributions, which evaluate_orm rules out.
//  - ida/pc tau: the matrix generator is predictor-exchangeable, so
//    relabeling permutes GD while leaving the component contributions
//    fixed, forcing E[tau] = 0 exactly; measured 0.000 +- 0.005 across
//    seeds, never the -0.05 reference.
Outcome criterion1(const std::string& cli) {
    const auto out_path = work_dir() / "table1.csv";
    const std::string command = cli +
                                " simulate --p-min 3 --p-max 3 --n-ev 200 --n-seeds 5"
                                " --n-responses 50 --r2 0.8 --seed 777 --out " +
                                out_path.string() + " > " + (work_dir() / "table1.log").string() +
                                " 2>&1";
    if (run_command(command) != 0) {
        return {false, "simulate invocation failed"};
    }
    const auto table = aggregate_table1(read_simulation_csv(out_path.string()));

    struct Expected {
        ReallocMethod a;
        OrthMethod z;
        double rmse_ref;
        double tau_ref;
    };
    const std::vector<Expected> expected = {
        {ReallocMethod::gda, OrthMethod::johnson, 0.01, 0.94},
        {ReallocMethod::corpa, OrthMethod::johnson, 0.02, 0.94},
        {ReallocMethod::regpa, OrthMethod::johnson, 0.02, 0.92},
        {ReallocMethod::ida, OrthMethod::johnson, 0.05, 0.90},
        {ReallocMethod::ida, OrthMethod::pc, 0.29, -0.05},
        {ReallocMethod::corpa, OrthMethod::pc, 0.20, 0.01},
    };
    std::string detail;
    bool pass = true;
    for (const auto& e : expected) {
        const auto& cell = table.at(TableKey{e.a, e.z, 3});
        const bool ok = std::abs(cell.mean_rmse - e.rmse_ref) <= 0.005 + 1e-12 &&
                        std::abs(cell.mean_tau - e.tau_ref) <= 0.04 + 1e-12;
        pass = pass && ok;
        detail += std::string(display_name(e.a)) + "/" + display_name(e.z) + " " +
                  fmt(cell.mean_rmse) + "/" + fmt(cell.mean_tau) + (ok ? " ok; " : " MISS; ");
    }
    if (!pass) {
        detail += "(ida/pc and corpa/pc reference cells are unreachable under the "
                  "rotated-basis ORM definition; see the note above this check)";
    }
    return {pass, detail};
}

// --- criterion 2 -----------------------------------------------------------

Outcome criterion2() {
    bool pass = true;
    std::string detail;
    for (int p : {3, 5}) {
        SimulationConfig config;
        config.p_min = p;
        config.p_max = p;
        config.n_ev = 100;
        config.n_seeds = 5;
        config.n_responses = 50;
        config.master_seed = 7000 + p;
        const auto table = aggregate_table1(run_simulation(config));

        auto cell = [&](ReallocMethod a, OrthMethod z) { return table.at(TableKey{a, z, p}); };
        const double gda = cell(ReallocMethod::gda, OrthMethod::johnson).mean_rmse;
        const double cor = cell(ReallocMethod::corpa, OrthMethod::johnson).mean_rmse;
        const double reg = cell(ReallocMethod::regpa, OrthMethod::johnson).mean_rmse;
        const double ida_v = cell(ReallocMethod::ida, OrthMethod::johnson).mean_rmse;
        const bool order_ok = gda <= cor && cor <= reg && reg <= ida_v;
        pass = pass && order_ok;
        detail += "p=" + std::to_string(p) + " Johnson rmse " + fmt(gda) + "<=" + fmt(cor) + "<=" +
                  fmt(reg) + "<=" + fmt(ida_v) + (order_ok ? " ok; " : " MISS; ");

        for (ReallocMethod a : kAllReallocMethods) {
            const double johnson_rmse = cell(a, OrthMethod::johnson).mean_rmse;
            for (OrthMethod z : {OrthMethod::gs, OrthMethod::pc, OrthMethod::vm}) {
                if (johnson_rmse > cell(a, z).mean_rmse) {
                    pass = false;
                    detail += std::string(display_name(a)) + ": Johnson not best vs " +
                              display_name(z) + "; ";
                }
            }
        }
    }
    return {pass, detail};
}

// --- criterion 3 -----------------------------------------------------------

Outcome criterion3() {
    RngStream stream(303);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const double rho = -0.99 + 1.98 * stream.uniform01();
        Matrix m(2, 2);
        m << 1.0, rho, rho, 1.0;
        const auto corr = validate_correlation(m);
        const auto problem = make_augmented(corr, random_rho_xy(corr, stream.derive("rho", rep)));
        const auto orth = johnson(corr);
        const Vector rho_zy = orthogonal_response_correlations(orth, problem);
        const Vector gd = general_dominance(problem).values;
        for (const auto& a : {corpa(orth), regpa(orth), gda_reallocation(orth, corr)}) {
            worst = std::max(worst, (evaluate_orm(a, rho_zy).values - gd).cwiseAbs().maxCoeff());
        }
    }
    return {worst < 1e-10, "max |GD - D| = " + fmt(worst) + " over 1000 instances"};
}

// --- criterion 4 -----------------------------------------------------------

Outcome criterion4() {
    RngStream stream(404);
    double worst_gap = 0.0;
    double worst_eff = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int p = 2 + rep % 5;  // p in {2,...,6}
        const auto corr = random_correlation(p, stream.derive("corr", rep));
        const Vector rho = random_rho_xy(corr, stream.derive("rho", rep));
        const auto problem = make_augmented(corr, rho);
        const Vector gd = general_dominance(problem).values;
        worst_gap = std::max(worst_gap,
                             (gd - oracle_permutation_gd(corr.values(), rho)).cwiseAbs().maxCoeff());
        worst_eff = std::max(worst_eff, std::abs(gd.sum() - problem.r_squared()));
    }
    return {worst_gap < 1e-10 && worst_eff < 1e-8,
            "max oracle gap " + fmt(worst_gap) + ", max efficiency gap " + fmt(worst_eff)};
}

// --- criterion 5 -----------------------------------------------------------

Outcome criterion5() {
    RngStream stream(505);
    bool pass = true;
    std::string detail;

    // Row sums (GDA/Johnson) and the |S| identity for all orthogonalizations.
    double worst_rowsum = 0.0, worst_trace = 0.0;
    for (int rep = 0; rep < 7; ++rep) {
        const int p = 2 + rep;  // 2..8
        const auto corr = random_correlation(p, stream.derive("corr", rep));
        const SubsetEngine engine(corr);
        for (OrthMethod m : kAllOrthMethods) {
            const auto orth = make_orthogonalization(m, corr);
            const auto tables = engine.r_squared_tables(orth.loading);
            for (std::size_t mask = 0; mask < engine.n_subsets(); ++mask) {
                double sum = 0.0;
                for (int j = 0; j < p; ++j) sum += tables[j][mask];
                worst_trace = std::max(worst_trace, std::abs(sum - std::popcount(mask)));
            }
            if (m == OrthMethod::johnson) {
                const auto gda = gda_reallocation(orth, engine);
                for (int i = 0; i < p; ++i) {
                    worst_rowsum = std::max(worst_rowsum, std::abs(gda.values.row(i).sum() - 1.0));
                }
            }
        }
    }
    pass = pass && worst_rowsum < 1e-8 && worst_trace < 1e-8;
    detail += "row-sum gap " + fmt(worst_rowsum) + ", |S| gap " + fmt(worst_trace) + "; ";

    // Expectations over 10^4 sphere-uniform responses at fixed Sigma.
    const int p = 5;
    const double r2 = 0.8;
    const auto corr = random_correlation(p, stream.derive("fixed", 0));
    const SubsetEngine engine(corr);
    const auto orth = johnson(corr);
    const Matrix loading = orth.loading;
    const auto reg = regpa(orth);
    const Vector reg_row_sums = reg.values.rowwise().sum();

    const int n = 10000;
    Matrix gd_samples(n, p), orm_samples(n, p);
    for (int k = 0; k < n; ++k) {
        const Vector u = sample_sphere(p, stream.derive("u", k));
        const Vector rho_zy = std::sqrt(r2) * u;
        gd_samples.row(k) =
            SubsetEngine::dominance_from_table(engine.r_squared_table(loading * rho_zy), p);
        orm_samples.row(k) = evaluate_orm(reg, rho_zy).values;
    }
    for (int i = 0; i < p; ++i) {
        auto check_mean = [&](const Matrix& samples, double target, const char* tag) {
            const double mean = samples.col(i).mean();
            const double sd = std::sqrt((samples.col(i).array() - mean).square().sum() / (n - 1));
            if (std::abs(mean - target) > 4.0 * sd / std::sqrt(static_cast<double>(n))) {
                pass = false;
                detail += std::string(tag) + "[" + std::to_string(i) + "] off: " + fmt(mean) +
                          " vs " + fmt(target) + "; ";
            }
        };
        check_mean(gd_samples, r2 / p, "E[GD]");
        check_mean(orm_samples, r2 / p * reg_row_sums(i), "E[D]");
    }
    if (pass && detail.find("off") == std::string::npos) detail += "expectations within 4 SE";
    return {pass, detail};
}

// --- criterion 6 -----------------------------------------------------------

Outcome criterion6() {
    RngStream stream(606);
    double worst = 1e9;
    for (int rep = 0; rep < 200; ++rep) {
        const int p = 3 + rep % 6;
        const auto corr = random_correlation(p, stream.derive("corr", rep));
        const Vector v = vif(corr);
        int k = 0;
        v.maxCoeff(&k);
        const auto a = regpa(johnson(corr));
        worst = std::min(worst, a.values.row(k).sum() - 1.0);
    }
    return {worst > -1e-10, "min (row sum - 1) at the max-VIF index = " + fmt(worst)};
}

// --- criterion 7 -----------------------------------------------------------

Outcome criterion7(const std::string& cli) {
    SimulationConfig config;
    config.p_min = 6;
    config.p_max = 6;
    config.n_ev = 300;
    config.n_seeds = 10;
    config.n_responses = 50;
    config.master_seed = 77;
    config.orth_set = {OrthMethod::johnson};
    config.realloc_set = {ReallocMethod::corpa, ReallocMethod::regpa};
    config.out_path = (work_dir() / "winloss_input.csv").string();
    std::ostringstream sink;
    cmd_simulate(config, sink, sink);

    // Exercise the CLI surface on the same file.
    const std::string command = cli + " winloss " + config.out_path + " --metric rmse --alpha 0.05 --out " +
                                (work_dir() / "winloss_out.csv").string() + " > " +
                                (work_dir() / "winloss.log").string() + " 2>&1";
    if (run_command(command) != 0) {
        return {false, "winloss invocation failed"};
    }

    const auto records = read_simulation_csv(config.out_path);
    const auto outcomes = win_loss(records, MetricTag::rmse, 0.05);
    const auto summary = threshold_summary(outcomes, 1.5, true);
    const bool pass = summary.frac_below > summary.frac_above && summary.p_one_sided < 0.05;
    return {pass, "RW win fraction " + fmt(summary.frac_below) + " (n=" + std::to_string(summary.n_below) +
                      ") below 1.5 vs " + fmt(summary.frac_above) + " (n=" +
                      std::to_string(summary.n_above) + ") above, one-sided p = " +
                      fmt(summary.p_one_sided)};
}

// --- criterion 8 -----------------------------------------------------------

Outcome criterion8() {
    RngStream stream(808);
    // 1000 spectra across p in {3..10}, zero NoConvergence at tol 1e-8.
    int failures = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int p = 3 + rep % 8;
        const auto spectrum = sample_simplex(p, stream.derive("spec", rep));
        try {
            (void)map_correlation(spectrum, rep % 10, stream.derive("mat", rep), 1e-8, 1000);
        } catch (const Error&) {
            ++failures;
        }
    }

    double lambda1_sum = 0.0;
    const int n_simplex = 100000;
    for (int k = 0; k < n_simplex; ++k) {
        lambda1_sum += sample_simplex(3, stream.derive("simplex", k)).lambdas(0);
    }
    const double lambda1_mean = lambda1_sum / n_simplex;

    const int p = 5;
    const int n_sphere = 100000;
    Matrix squares(n_sphere, p);
    for (int k = 0; k < n_sphere; ++k) {
        const Vector u = sample_sphere(p, stream.derive("sphere", k));
        squares.row(k) = u.cwiseProduct(u);
    }
    bool sphere_ok = true;
    for (int i = 0; i < p; ++i) {
        const double mean = squares.col(i).mean();
        const double sd = std::sqrt((squares.col(i).array() - mean).square().sum() / (n_sphere - 1));
        sphere_ok = sphere_ok && std::abs(mean - 1.0 / p) <= 4.0 * sd / std::sqrt(double(n_sphere));
    }

    const bool pass = failures == 0 && std::abs(lambda1_mean - 11.0 / 6.0) < 0.01 && sphere_ok;
    return {pass, std::to_string(failures) + " projection failures; E[lambda1] = " + fmt(lambda1_mean) +
                      " (target 1.8333); sphere marginals " + (sphere_ok ? "ok" : "MISS")};
}

// --- criterion 9 -----------------------------------------------------------

Outcome criterion9(const std::string& cli) {
    const auto path_a = work_dir() / "det_a.csv";
    const auto path_b = work_dir() / "det_b.csv";
    const std::string args = " simulate --p-min 3 --p-max 4 --n-ev 20 --n-seeds 3 --n-responses 10"
                             " --r2 0.8 --seed 4242 --out ";
    const std::string log = " > /dev/null 2>&1";
    if (run_command("RELIMP_THREADS=1 " + cli + args + path_a.string() + log) != 0) {
        return {false, "first simulate invocation failed"};
    }
    if (run_command("RELIMP_THREADS=4 " + cli + args + path_b.string() + log) != 0) {
        return {false, "second simulate invocation failed"};
    }
    const std::string a = read_file(path_a);
    const std::string b = read_file(path_b);
    if (a.empty()) return {false, "no output produced"};
    return {a == b, a == b ? "byte-identical across RELIMP_THREADS=1 and 4"
                           : "outputs differ between thread counts"};
}

// --- criterion 10 ----------------------------------------------------------

Outcome criterion10() {
    RngStream stream(1010);
    double worst = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
        const double rho = -0.99 + 1.98 * stream.uniform01();
        Matrix m(2, 2);
        m << 1.0, rho, rho, 1.0;
        const auto corr = validate_correlation(m);
        const auto vm = canonicalized(varimax(corr));
        worst = std::max(worst, (vm.loading - johnson(corr).loading).cwiseAbs().maxCoeff());
    }
    return {worst < 1e-6, "max canonicalized loading gap = " + fmt(worst) + " over 500 draws"};
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = "./relimp";
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    }
    if (const char* env = std::getenv("RELIMP_CLI")) cli = env;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Table 1 reproduction at desk scale (p=3)", [&] { return criterion1(cli); }},
        {"RMSE ordering across reallocations and orthogonalizations (p in {3,5})", criterion2},
        {"p=2 coincidence of GD with CorPA/RegPA/GDA under Johnson", criterion3},
        {"GD equals the permutation oracle with efficiency (p <= 6)", criterion4},
        {"GDA row sums, subset-trace identity, and sphere expectations", criterion5},
        {"RegPA row sum exceeds 1 at the max-VIF predictor", criterion6},
        {"RW-vs-GCD win fraction drops above lambda1/sqrt(p) = 1.5", [&] { return criterion7(cli); }},
        {"Generator suite: projections converge, simplex and sphere moments", criterion8},
        {"Byte-identical simulate output across thread counts", [&] { return criterion9(cli); }},
        {"Varimax equals Johnson at p=2 after canonicalization", criterion10},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass) ++failures;
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": "
                  << criteria[i].first << " -- " << outcome.detail << std::endl;
    }
    return failures;
}
