#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relimp/corrmat.hpp"
#include "relimp/metrics.hpp"
#include "relimp/realloc.hpp"

namespace relimp {

/// Dataset-analysis report: the named measures, their normalized-to-100%
/// variants, the multicollinearity diagnostics, and the scenario-driven
/// guideline recommendation.
struct AnalysisReport {
    std::vector<std::string> names;
    // Keys GD, GCD, RW, CAR, GDA_ORM; GD/GDA_ORM absent above the exact cap.
    std::map<std::string, Vector> measures;
    std::map<std::string, Vector> normalized;  // scaled to sum 100
    Vector vif_values;
    Vector regpa_row_sums;
    double r_squared = 0.0;
    Scenario scenario{};
    std::string recommendation;
    bool gd_available = true;
    std::string warning;  // set when GD/GDA are skipped
};

/// Pure function of the scenario label (the section-6 guidelines).
const char* recommendation_for(ScenarioLabel label);

AnalysisReport analyze_problem(const AugmentedProblem& problem, std::vector<std::string> names);

std::string render_text(const AnalysisReport& report);
std::string render_csv(const AnalysisReport& report);
std::string render_json(const AnalysisReport& report);

/// Table-1-style summary grid of mean RMSE / tau keyed by
/// (reallocation, orthogonalization, p).
std::string format_table1(const std::map<TableKey, MeanMetrics>& table);

std::string format_threshold_summary(const ThresholdSummary& all, const ThresholdSummary& mild);

} // namespace relimp
