#include "relimp/cli.hpp"

#include <fstream>

#include "relimp/csv.hpp"
#include "relimp/dominance.hpp"

namespace relimp {

int exit_code_for(const Error& error) {
    switch (error.code()) {
        case errc::cholesky_failure:
        case errc::degenerate_column:
        case errc::no_convergence:
        case errc::sampler_stuck:
            return 3;
        case errc::io_failure:
            return 4;
        default:
            return 2;
    }
}

int cmd_simulate(const SimulationConfig& config, std::ostream& out, std::ostream& err) {
    validate_config(config);
    if (config.out_path.empty()) {
        throw Error(errc::invalid_config, "simulate needs --out <csv>");
    }
    if (config.p_max > kSoftPredictorCap) {
        err << "warning: p_max = " << config.p_max << " enumerates 2^p sub-models per cell; "
            << "expect long runtimes above p = " << kSoftPredictorCap << "\n";
    }

    SimulationCsvWriter writer(config.out_path, config.per_response,
                               response_detail_path(config.out_path));
    Table1Accumulator accumulator;
    const std::size_t total_tasks = count_tasks(config);
    std::size_t completed = 0;
    try {
        run_simulation(config, [&](TaskResult&& task) {
            writer.write_task(task);
            for (const SimulationRecord& r : task.records) accumulator.add(r);
            ++completed;
        });
    } catch (...) {
        writer.write_resume_marker(completed, total_tasks);
        err << "interrupted after " << completed << " of " << total_tasks
            << " tasks; partial rows kept in " << config.out_path << "\n";
        throw;
    }
    writer.close();

    out << format_table1(accumulator.finalize());
    out << "rows written to " << config.out_path;
    if (config.per_response) out << " (details in " << response_detail_path(config.out_path) << ")";
    out << "\n";
    return 0;
}

ReportFormat report_format_from_string(std::string_view s) {
    if (s == "text") return ReportFormat::text;
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw Error(errc::invalid_config, "unknown format '" + std::string(s) + "' (expected text|csv|json)");
}

namespace {

struct LoadedProblem {
    AugmentedProblem problem;
    std::vector<std::string> names;
};

LoadedProblem load_from_correlation_csv(const std::string& path) {
    const MatrixCsv csv = read_matrix_csv(path);
    const int n = static_cast<int>(csv.values.rows());
    if (!(csv.labeled && csv.labels.back() == "y")) {
        throw Error(errc::invalid_config,
                    "'" + path + "' is not an augmented correlation matrix (last column must be "
                    "labeled 'y'); pass raw data via --data with --response instead");
    }
    const int p = n - 1;
    if (p < 2) throw Error(errc::not_square, "need at least 2 predictors");
    const Matrix sigma_xx = csv.values.topLeftCorner(p, p);
    const Vector rho_xy = csv.values.topRightCorner(p, 1);
    if (std::abs(csv.values(p, p) - 1.0) > 1e-10) {
        throw Error(errc::diagonal_not_unit, "response diagonal entry is not 1");
    }
    std::vector<std::string> names(csv.labels.begin(), csv.labels.end() - 1);
    return LoadedProblem{make_augmented(validate_correlation(sigma_xx), rho_xy), std::move(names)};
}

} // namespace

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
    if (options.corr_path.empty() == options.data_path.empty()) {
        throw Error(errc::invalid_config, "analyze needs exactly one of --corr or --data");
    }

    std::optional<LoadedProblem> loaded;
    if (!options.corr_path.empty()) {
        loaded = load_from_correlation_csv(options.corr_path);
    } else {
        if (options.response_column.empty()) {
            throw Error(errc::invalid_config, "--data needs --response <name>");
        }
        const RawData raw = read_raw_csv(options.data_path);
        Dataset dataset = ingest_dataset(raw.values, raw.columns, options.response_column);
        loaded = LoadedProblem{std::move(dataset.problem), std::move(dataset.predictor_names)};
    }

    if (loaded->problem.p() > kSoftPredictorCap && loaded->problem.p() <= kMaxPredictors) {
        err << "warning: exact GD over 2^" << loaded->problem.p() << " sub-models may be slow\n";
    }

    const AnalysisReport report = analyze_problem(loaded->problem, loaded->names);
    if (!report.warning.empty()) err << "warning: " << report.warning << "\n";

    std::string rendered;
    switch (options.format) {
        case ReportFormat::text: rendered = render_text(report); break;
        case ReportFormat::csv: rendered = render_csv(report); break;
        case ReportFormat::json: rendered = render_json(report); break;
    }
    if (options.out_path.empty()) {
        out << rendered;
    } else {
        std::ofstream file(options.out_path, std::ios::trunc);
        if (!file) throw Error(errc::io_failure, "cannot write '" + options.out_path + "'");
        file << rendered;
        if (!file) throw Error(errc::io_failure, "write failed on '" + options.out_path + "'");
        out << "report written to " << options.out_path << "\n";
    }
    return 0;
}

int cmd_winloss(const WinLossOptions& options, std::ostream& out, std::ostream&) {
    const std::vector<SimulationRecord> records = read_simulation_csv(options.input_csv);
    const std::vector<WinLossOutcome> outcomes = win_loss(records, options.metric, options.alpha);
    if (!options.out_path.empty()) {
        write_winloss_csv(options.out_path, outcomes);
        out << "outcomes written to " << options.out_path << "\n";
    }
    const ThresholdSummary all = threshold_summary(outcomes, 1.5, false);
    const ThresholdSummary mild = threshold_summary(outcomes, 1.5, true);
    out << format_threshold_summary(all, mild);
    return 0;
}

} // namespace relimp
