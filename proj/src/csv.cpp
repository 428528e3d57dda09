#include "relimp/csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "relimp/error.hpp"

namespace relimp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !s.empty();
}

double require_double(const std::string& s, const char* what) {
    double v = 0.0;
    if (!parse_double(s, v)) {
        throw Error(errc::schema_mismatch, std::string("expected a number for ") + what + ", got '" + s + "'");
    }
    return v;
}

int require_int(const std::string& s, const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw Error(errc::schema_mismatch, std::string("expected an integer for ") + what + ", got '" + s + "'");
    }
    return v;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_failure, "cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        lines.push_back(line);
    }
    return lines;
}

} // namespace

MatrixCsv read_matrix_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw Error(errc::schema_mismatch, "'" + path + "' is empty");

    MatrixCsv out;
    std::size_t first_data_row = 0;
    auto first_cells = split_line(lines[0]);
    double probe = 0.0;
    if (!parse_double(first_cells[0], probe)) {
        out.labeled = true;
        out.labels = first_cells;
        first_data_row = 1;
    }

    const std::size_t n_rows = lines.size() - first_data_row;
    if (n_rows == 0) throw Error(errc::schema_mismatch, "'" + path + "' has a header but no rows");
    const auto width = split_line(lines[first_data_row]).size();
    if (out.labeled && out.labels.size() != width) {
        throw Error(errc::schema_mismatch, "header width does not match row width in '" + path + "'");
    }
    if (n_rows != width) {
        throw Error(errc::not_square, "'" + path + "' is " + std::to_string(n_rows) + "x" +
                                          std::to_string(width));
    }

    out.values.resize(n_rows, width);
    for (std::size_t i = 0; i < n_rows; ++i) {
        const auto cells = split_line(lines[first_data_row + i]);
        if (cells.size() != width) {
            throw Error(errc::schema_mismatch, "ragged row " + std::to_string(i) + " in '" + path + "'");
        }
        for (std::size_t j = 0; j < width; ++j) {
            out.values(i, j) = require_double(cells[j], "matrix entry");
        }
    }
    return out;
}

RawData read_raw_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.size() < 2) throw Error(errc::schema_mismatch, "'" + path + "' needs a header and data rows");

    RawData out;
    out.columns = split_line(lines[0]);
    const std::size_t width = out.columns.size();
    out.values.resize(lines.size() - 1, width);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_line(lines[i]);
        if (cells.size() != width) {
            throw Error(errc::schema_mismatch, "ragged row " + std::to_string(i) + " in '" + path + "'");
        }
        for (std::size_t j = 0; j < width; ++j) {
            double v = 0.0;
            if (!parse_double(cells[j], v)) {
                throw Error(errc::missing_values, "non-numeric cell in row " + std::to_string(i) +
                                                      " of '" + path + "'");
            }
            out.values(i - 1, j) = v;
        }
    }
    return out;
}

std::string simulation_row(const SimulationRecord& r) {
    std::ostringstream os;
    os << r.p << ',' << r.ev_index << ',' << r.seed_index << ',' << to_string(r.orth) << ','
       << to_string(r.realloc) << ',' << format_double(r.lambda1) << ','
       << format_double(r.lambda1_ratio) << ',' << format_double(r.vif_max) << ','
       << format_double(r.vif_ratio) << ',' << to_string(r.scenario) << ','
       << format_double(r.mean_rmse) << ',' << format_double(r.mean_tau) << ',' << r.n_responses;
    return os.str();
}

std::string response_detail_path(const std::string& out_path) {
    const auto dot = out_path.rfind('.');
    const auto slash = out_path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return out_path + ".responses.csv";
    }
    return out_path.substr(0, dot) + ".responses.csv";
}

SimulationCsvWriter::SimulationCsvWriter(const std::string& path, bool per_response,
                                         const std::string& detail_path)
    : per_response_(per_response) {
    out_.open(path, std::ios::trunc);
    if (!out_) throw Error(errc::io_failure, "cannot write '" + path + "'");
    out_ << kSimulationHeader << '\n';
    if (per_response_) {
        detail_out_.open(detail_path, std::ios::trunc);
        if (!detail_out_) throw Error(errc::io_failure, "cannot write '" + detail_path + "'");
        detail_out_ << kResponseDetailHeader << '\n';
    }
}

void SimulationCsvWriter::write_task(const TaskResult& task) {
    for (const SimulationRecord& r : task.records) out_ << simulation_row(r) << '\n';
    if (per_response_) {
        for (const ResponseDetail& d : task.details) {
            detail_out_ << d.p << ',' << d.ev_index << ',' << d.seed_index << ',' << d.response_index
                        << ',' << to_string(d.orth) << ',' << to_string(d.realloc) << ','
                        << format_double(d.rmse_value) << ',' << format_double(d.tau_value) << '\n';
        }
    }
    if (!out_ || (per_response_ && !detail_out_)) {
        throw Error(errc::io_failure, "write failed (disk full?)");
    }
}

void SimulationCsvWriter::write_resume_marker(std::size_t completed_tasks, std::size_t total_tasks) {
    out_ << "# resume: completed_tasks=" << completed_tasks << " of " << total_tasks << '\n';
    out_.flush();
}

void SimulationCsvWriter::close() {
    out_.close();
    if (per_response_) detail_out_.close();
    if (out_.fail()) throw Error(errc::io_failure, "flush failed on simulation CSV");
}

std::vector<SimulationRecord> read_simulation_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != kSimulationHeader) {
        throw Error(errc::schema_mismatch, "'" + path + "' does not carry the simulation CSV header");
    }
    std::vector<SimulationRecord> records;
    records.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].rfind("#", 0) == 0) continue;  // resume markers
        const auto cells = split_line(lines[i]);
        if (cells.size() != 13) {
            throw Error(errc::schema_mismatch, "row " + std::to_string(i) + " has " +
                                                   std::to_string(cells.size()) + " columns");
        }
        SimulationRecord r;
        r.p = require_int(cells[0], "p");
        r.ev_index = require_int(cells[1], "ev_index");
        r.seed_index = require_int(cells[2], "seed_index");
        r.orth = orth_from_string(cells[3]);
        r.realloc = realloc_from_string(cells[4]);
        r.lambda1 = require_double(cells[5], "lambda1");
        r.lambda1_ratio = require_double(cells[6], "lambda1_over_sqrt_p");
        r.vif_max = require_double(cells[7], "vif_max");
        r.vif_ratio = require_double(cells[8], "vif_max_over_p");
        r.scenario = scenario_from_string(cells[9]);
        r.mean_rmse = require_double(cells[10], "mean_rmse");
        r.mean_tau = require_double(cells[11], "mean_tau");
        r.n_responses = require_int(cells[12], "n_responses");
        records.push_back(r);
    }
    return records;
}

void write_winloss_csv(const std::string& path, const std::vector<WinLossOutcome>& outcomes) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(errc::io_failure, "cannot write '" + path + "'");
    out << kWinLossHeader << '\n';
    for (const auto& o : outcomes) {
        out << o.comparison_id << ',' << o.p << ',' << o.ev_index << ','
            << format_double(o.lambda1_ratio) << ',' << o.wins_rw << ',' << o.wins_gcd << ','
            << o.ties << ',' << format_double(o.alpha) << ',' << format_double(o.mild_fraction)
            << '\n';
    }
    if (!out) throw Error(errc::io_failure, "write failed on '" + path + "'");
}

} // namespace relimp
