#pragma once

#include <iostream>
#include <optional>
#include <string>

#include "relimp/report.hpp"
#include "relimp/simgen.hpp"

namespace relimp {

/// Runs the Monte Carlo design, streams rows to config.out_path (plus the
/// per-response detail file when requested), and prints a Table-1-style
/// summary. On interruption the rows written so far are kept and a resume
/// marker is appended.
int cmd_simulate(const SimulationConfig& config, std::ostream& out = std::cout,
                 std::ostream& err = std::cerr);

enum class ReportFormat { text, csv, json };
ReportFormat report_format_from_string(std::string_view s);

struct AnalyzeOptions {
    std::string corr_path;      // correlation CSV (augmented: last row/col "y")
    std::string data_path;      // raw-data CSV, used with response_column
    std::string response_column;
    ReportFormat format = ReportFormat::text;
    std::string out_path;  // empty -> stdout
};

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);

struct WinLossOptions {
    std::string input_csv;  // produced by cmd_simulate
    double alpha = 0.05;
    MetricTag metric = MetricTag::rmse;
    std::string out_path;  // empty -> stdout only
};

int cmd_winloss(const WinLossOptions& options, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);

/// Maps library errors onto exit codes: 2 validation, 3 numerical,
/// 4 IO (0 is success).
int exit_code_for(const Error& error);

} // namespace relimp
