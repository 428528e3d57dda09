#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "relimp/metrics.hpp"
#include "relimp/simgen.hpp"
#include "relimp/types.hpp"

namespace relimp {

/// 12 significant digits, locale-independent.
std::string format_double(double v);

struct MatrixCsv {
    Matrix values;
    std::vector<std::string> labels;  // column labels when a header row exists
    bool labeled = false;
};

/// Square numeric matrix with an optional header row of labels.
MatrixCsv read_matrix_csv(const std::string& path);

struct RawData {
    Matrix values;  // one row per observation
    std::vector<std::string> columns;
};

/// Raw-data CSV: header row of variable names, one row per observation.
RawData read_raw_csv(const std::string& path);

inline constexpr const char* kSimulationHeader =
    "p,ev_index,seed_index,orth,realloc,lambda1,lambda1_over_sqrt_p,vif_max,vif_max_over_p,"
    "scenario,mean_rmse,mean_tau,n_responses";

inline constexpr const char* kResponseDetailHeader =
    "p,ev_index,seed_index,response_index,orth,realloc,rmse,tau";

inline constexpr const char* kWinLossHeader =
    "comparison_id,p,ev_index,lambda1_over_sqrt_p,wins_rw,wins_gcd,ties,alpha,mild_fraction";

/// Streaming writer for simulation output; rows are written in the order
/// tasks are delivered, which run_simulation keeps deterministic. On
/// interruption write_resume_marker records how far the run got.
class SimulationCsvWriter {
public:
    SimulationCsvWriter(const std::string& path, bool per_response, const std::string& detail_path);
    void write_task(const TaskResult& task);
    void write_resume_marker(std::size_t completed_tasks, std::size_t total_tasks);
    void close();

private:
    std::ofstream out_;
    std::ofstream detail_out_;
    bool per_response_;
};

/// Detail-file path next to the main output: `<stem>.responses.csv`.
std::string response_detail_path(const std::string& out_path);

std::string simulation_row(const SimulationRecord& r);

/// Parses a file produced by SimulationCsvWriter; resume-marker comment
/// lines are skipped. Throws SchemaMismatch on any header or row shape
/// deviation.
std::vector<SimulationRecord> read_simulation_csv(const std::string& path);

void write_winloss_csv(const std::string& path, const std::vector<WinLossOutcome>& outcomes);

} // namespace relimp
