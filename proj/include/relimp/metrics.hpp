#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "relimp/types.hpp"

namespace relimp {

/// One evaluated (p, eigenvalue set, seed, orthogonalization, reallocation)
/// simulation cell with metrics averaged over the sampled responses.
struct SimulationRecord {
    int p = 0;
    int ev_index = 0;
    int seed_index = 0;
    OrthMethod orth = OrthMethod::johnson;
    ReallocMethod realloc = ReallocMethod::gda;
    double mean_rmse = 0.0;
    double mean_tau = 0.0;
    double lambda1 = 0.0;
    double vif_max = 0.0;
    double lambda1_ratio = 0.0;  // lambda1 / sqrt(p)
    double vif_ratio = 0.0;      // vif_max / p
    ScenarioLabel scenario = ScenarioLabel::s11;
    int n_responses = 0;
};

double rmse(const Vector& reference, const Vector& candidate);
double rmse(const ImportanceVector& reference, const ImportanceVector& candidate);

struct KendallResult {
    double tau = 0.0;
    bool all_tied = false;
};

/// Kendall's tau-b (tie-corrected); equals tau-a when no ties. Pairs tied
/// in both vectors count in neither denominator factor. All pairs tied ->
/// tau 0 with the all_tied flag set.
KendallResult kendall_tau(const Vector& reference, const Vector& candidate);

enum class Winner { a, b, tie };
enum class BetterDirection { higher, lower };

struct WilcoxonResult {
    Winner winner = Winner::tie;
    double statistic = 0.0;  // W+ = sum of ranks of positive differences
    double p_value = 1.0;
    int n_used = 0;  // pairs remaining after zero differences are dropped
    bool exact = false;
};

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped; n <= 25 uses the exact null distribution (midranks handled
/// via doubled ranks), larger n the normal approximation with continuity
/// and tie corrections. The winner is the side with the better mean when
/// p < alpha, where `better` states which direction is better.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& paired_a,
                                    const std::vector<double>& paired_b, double alpha,
                                    BetterDirection better = BetterDirection::higher);

struct TableKey {
    ReallocMethod realloc;
    OrthMethod orth;
    int p;
    auto operator<=>(const TableKey&) const = default;
};

struct MeanMetrics {
    double mean_rmse = 0.0;
    double mean_tau = 0.0;
    long n_cells = 0;
};

/// Streaming aggregator behind aggregate_table1 so callers can fold
/// records without retaining them.
class Table1Accumulator {
public:
    void add(const SimulationRecord& record);
    std::map<TableKey, MeanMetrics> finalize() const;

private:
    struct Sums {
        double rmse_sum = 0.0;
        double tau_sum = 0.0;
        long n = 0;
    };
    std::map<TableKey, Sums> sums_;
};

/// Unweighted mean RMSE / tau over all (ev, seed) cells per
/// (realloc, orth, p) key. Throws EmptyGroup on empty input.
std::map<TableKey, MeanMetrics> aggregate_table1(const std::vector<SimulationRecord>& records);

enum class MetricTag { rmse, tau };
const char* to_string(MetricTag m);
MetricTag metric_from_string(std::string_view s);

/// One RW-vs-GCD comparison. Per-eigenvalue-set outcomes have exactly one
/// of wins_rw / wins_gcd / ties set to 1, so summing a stream of outcomes
/// (or a binned aggregate of them) counts the eigenvalue sets compared.
struct WinLossOutcome {
    std::string comparison_id;
    int p = 0;
    int ev_index = 0;
    int wins_rw = 0;
    int wins_gcd = 0;
    int ties = 0;
    double alpha = 0.05;
    double lambda1_ratio = 0.0;
    double mild_fraction = 0.0;  // share of paired cells with VIF_max/p < 4
};

/// Per eigenvalue set: Wilcoxon over the paired per-seed metric values of
/// RW (CorPA/Johnson) and GCD (RegPA/Johnson). Groups must contain the
/// same seeds for both measures (UnpairedGroup otherwise).
std::vector<WinLossOutcome> win_loss(const std::vector<SimulationRecord>& records, MetricTag metric,
                                     double alpha);

struct ThresholdSummary {
    double threshold = 1.5;
    long n_below = 0, rw_wins_below = 0;
    long n_above = 0, rw_wins_above = 0;
    double frac_below = 0.0, frac_above = 0.0;
    double z = 0.0;           // two-proportion z for H1: frac_below > frac_above
    double p_one_sided = 1.0;
};

/// Bins outcomes at the lambda1/sqrt(p) threshold and tests whether the RW
/// win fraction drops above it. With mild_only set, only eigenvalue sets
/// whose cells are majority-mild (VIF_max/p < 4) are counted.
ThresholdSummary threshold_summary(const std::vector<WinLossOutcome>& outcomes, double threshold = 1.5,
                                   bool mild_only = true);

} // namespace relimp
