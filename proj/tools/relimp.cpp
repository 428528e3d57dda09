#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relimp/cli.hpp"
#include "relimp/config.hpp"

namespace {

struct SimulateFlags {
    relimp::SimulationConfig config;
    std::string config_path;
    int p_min = 0, p_max = 0, n_ev = 0, n_seeds = 0, n_responses = 0;
    double r2 = 0.0, map_tol = 0.0;
    std::uint64_t seed = 0;
    std::string out;
    std::vector<std::string> orth, realloc_tags;
    bool per_response = false;
    int threads = 0, map_max_iter = 0;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relative importance analysis: general dominance, ORMs, and the Monte Carlo harness"};
    app.require_subcommand(1);

    SimulateFlags sim;
    CLI::App* simulate = app.add_subcommand("simulate", "run the Monte Carlo evaluation design");
    auto* f_pmin = simulate->add_option("--p-min", sim.p_min, "smallest predictor count");
    auto* f_pmax = simulate->add_option("--p-max", sim.p_max, "largest predictor count");
    auto* f_nev = simulate->add_option("--n-ev", sim.n_ev, "eigenvalue sets per p");
    auto* f_nseeds = simulate->add_option("--n-seeds", sim.n_seeds, "correlation matrices per eigenvalue set");
    auto* f_nresp = simulate->add_option("--n-responses", sim.n_responses, "responses per correlation matrix");
    auto* f_r2 = simulate->add_option("--r2", sim.r2, "target R^2 of every response");
    auto* f_seed = simulate->add_option("--seed", sim.seed, "master seed");
    auto* f_out = simulate->add_option("--out", sim.out, "output CSV path");
    auto* f_orth = simulate->add_option("--orth", sim.orth, "orthogonalizations (johnson,gs,pc,vm)")
                       ->delimiter(',');
    auto* f_realloc = simulate->add_option("--realloc", sim.realloc_tags, "reallocations (gda,corpa,regpa,ida)")
                          ->delimiter(',');
    auto* f_per_resp = simulate->add_flag("--per-response", sim.per_response, "also write per-response metrics");
    auto* f_threads = simulate->add_option("--threads", sim.threads, "worker threads (RELIMP_THREADS overrides 0)");
    auto* f_map_tol = simulate->add_option("--map-tol", sim.map_tol, "alternating-projection tolerance");
    auto* f_map_iter = simulate->add_option("--map-max-iter", sim.map_max_iter, "alternating-projection cycle cap");
    simulate->add_option("--config", sim.config_path, "TOML config file (flags override it)");

    relimp::AnalyzeOptions analyze_opts;
    std::string analyze_format = "text";
    CLI::App* analyze = app.add_subcommand("analyze", "relative importance report for a dataset");
    analyze->add_option("--corr", analyze_opts.corr_path,
                        "augmented correlation CSV (response last, labeled 'y')");
    analyze->add_option("--data", analyze_opts.data_path, "raw-data CSV (header + observations)");
    analyze->add_option("--response", analyze_opts.response_column, "response column name for --data");
    analyze->add_option("--format", analyze_format, "text|csv|json")->check(CLI::IsMember({"text", "csv", "json"}));
    analyze->add_option("--out", analyze_opts.out_path, "write the report here instead of stdout");

    relimp::WinLossOptions winloss_opts;
    std::string winloss_metric = "rmse";
    CLI::App* winloss = app.add_subcommand("winloss", "RW-vs-GCD Wilcoxon win-loss analysis");
    winloss->add_option("input", winloss_opts.input_csv, "simulation CSV from `simulate`")->required();
    winloss->add_option("--alpha", winloss_opts.alpha, "two-sided significance level");
    winloss->add_option("--metric", winloss_metric, "rmse|tau")->check(CLI::IsMember({"rmse", "tau"}));
    winloss->add_option("--out", winloss_opts.out_path, "per-eigenvalue-set outcome CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            relimp::SimulationConfig config;  // defaults
            if (!sim.config_path.empty()) {
                relimp::apply_toml(relimp::parse_toml_file(sim.config_path), config);
            }
            if (f_pmin->count()) config.p_min = sim.p_min;
            if (f_pmax->count()) config.p_max = sim.p_max;
            if (f_nev->count()) config.n_ev = sim.n_ev;
            if (f_nseeds->count()) config.n_seeds = sim.n_seeds;
            if (f_nresp->count()) config.n_responses = sim.n_responses;
            if (f_r2->count()) config.r_squared = sim.r2;
            if (f_seed->count()) config.master_seed = sim.seed;
            if (f_out->count()) config.out_path = sim.out;
            if (f_orth->count()) config.orth_set = relimp::parse_orth_set(sim.orth);
            if (f_realloc->count()) config.realloc_set = relimp::parse_realloc_set(sim.realloc_tags);
            if (f_per_resp->count()) config.per_response = sim.per_response;
            if (f_threads->count()) config.threads = sim.threads;
            if (f_map_tol->count()) config.map_tol = sim.map_tol;
            if (f_map_iter->count()) config.map_max_iter = sim.map_max_iter;
            return relimp::cmd_simulate(config);
        }
        if (analyze->parsed()) {
            analyze_opts.format = relimp::report_format_from_string(analyze_format);
            return relimp::cmd_analyze(analyze_opts);
        }
        if (winloss->parsed()) {
            winloss_opts.metric = relimp::metric_from_string(winloss_metric);
            return relimp::cmd_winloss(winloss_opts);
        }
    } catch (const relimp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return relimp::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
