#include "relimp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relimp/error.hpp"

namespace relimp {

double rmse(const Vector& reference, const Vector& candidate) {
    if (reference.size() != candidate.size()) {
        throw Error(errc::dimension_mismatch, "importance vectors differ in length");
    }
    return std::sqrt((reference - candidate).squaredNorm() / reference.size());
}

double rmse(const ImportanceVector& reference, const ImportanceVector& candidate) {
    return rmse(reference.values, candidate.values);
}

KendallResult kendall_tau(const Vector& reference, const Vector& candidate) {
    const int n = static_cast<int>(reference.size());
    if (n != candidate.size()) {
        throw Error(errc::dimension_mismatch, "vectors differ in length");
    }
    if (n < 2) {
        throw Error(errc::dimension_mismatch, "need length >= 2");
    }
    long concordant = 0, discordant = 0, ties_x_only = 0, ties_y_only = 0;
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            const double dx = reference(i) - reference(j);
            const double dy = candidate(i) - candidate(j);
            if (dx == 0.0 && dy == 0.0) continue;  // tied in both: in neither factor
            if (dx == 0.0) {
                ++ties_x_only;
            } else if (dy == 0.0) {
                ++ties_y_only;
            } else if (dx * dy > 0.0) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const double fx = static_cast<double>(concordant + discordant + ties_y_only);
    const double fy = static_cast<double>(concordant + discordant + ties_x_only);
    if (fx == 0.0 || fy == 0.0) {
        return KendallResult{0.0, true};
    }
    return KendallResult{(concordant - discordant) / std::sqrt(fx * fy), false};
}

namespace {

double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

} // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& paired_a,
                                    const std::vector<double>& paired_b, double alpha,
                                    BetterDirection better) {
    if (paired_a.size() != paired_b.size()) {
        throw Error(errc::dimension_mismatch, "paired samples differ in length");
    }
    if (paired_a.size() < 2) {
        throw Error(errc::dimension_mismatch, "need at least 2 pairs");
    }

    std::vector<double> diffs;
    diffs.reserve(paired_a.size());
    for (std::size_t i = 0; i < paired_a.size(); ++i) {
        const double d = paired_a[i] - paired_b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult result;
    if (diffs.empty()) {
        // All differences zero: nothing to rank, treated as a tie.
        result.exact = true;
        return result;
    }

    const int n = static_cast<int>(diffs.size());
    result.n_used = n;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(diffs[a]) < std::abs(diffs[b]); });

    // Midranks over runs of tied |d|; doubled ranks stay integral.
    std::vector<double> rank(n, 0.0);
    double tie_cubes = 0.0;
    for (int start = 0; start < n;) {
        int stop = start + 1;
        while (stop < n && std::abs(diffs[order[stop]]) == std::abs(diffs[order[start]])) ++stop;
        const double mid = 0.5 * (start + stop - 1) + 1.0;
        for (int k = start; k < stop; ++k) rank[order[k]] = mid;
        const double t = stop - start;
        tie_cubes += t * t * t - t;
        start = stop;
    }

    double w_plus = 0.0;
    for (int i = 0; i < n; ++i) {
        if (diffs[i] > 0.0) w_plus += rank[i];
    }
    result.statistic = w_plus;

    if (n <= 25) {
        result.exact = true;
        std::vector<long> doubled(n);
        long max_sum = 0;
        for (int i = 0; i < n; ++i) {
            doubled[i] = std::lround(2.0 * rank[i]);
            max_sum += doubled[i];
        }
        std::vector<double> count(static_cast<std::size_t>(max_sum) + 1, 0.0);
        count[0] = 1.0;
        for (long r : doubled) {
            for (long s = max_sum; s >= r; --s) count[s] += count[s - r];
        }
        const double total = std::ldexp(1.0, n);
        const long w2 = std::lround(2.0 * w_plus);
        double below = 0.0, above = 0.0;
        for (long s = 0; s <= max_sum; ++s) {
            if (s <= w2) below += count[s];
            if (s >= w2) above += count[s];
        }
        result.p_value = std::min(1.0, 2.0 * std::min(below, above) / total);
    } else {
        const double mu = n * (n + 1) / 4.0;
        const double sigma2 = n * (n + 1) * (2.0 * n + 1) / 24.0 - tie_cubes / 48.0;
        const double sigma = std::sqrt(sigma2);
        double z = 0.0;
        if (w_plus > mu) {
            z = (w_plus - mu - 0.5) / sigma;
        } else if (w_plus < mu) {
            z = (w_plus - mu + 0.5) / sigma;
        }
        result.p_value = normal_two_sided_p(z);
    }

    if (result.p_value < alpha) {
        const double mean_a = std::accumulate(paired_a.begin(), paired_a.end(), 0.0) / paired_a.size();
        const double mean_b = std::accumulate(paired_b.begin(), paired_b.end(), 0.0) / paired_b.size();
        if (mean_a != mean_b) {
            const bool a_better = (better == BetterDirection::higher) ? mean_a > mean_b : mean_a < mean_b;
            result.winner = a_better ? Winner::a : Winner::b;
        }
    }
    return result;
}

void Table1Accumulator::add(const SimulationRecord& record) {
    Sums& s = sums_[TableKey{record.realloc, record.orth, record.p}];
    s.rmse_sum += record.mean_rmse;
    s.tau_sum += record.mean_tau;
    s.n += 1;
}

std::map<TableKey, MeanMetrics> Table1Accumulator::finalize() const {
    if (sums_.empty()) {
        throw Error(errc::empty_group, "no simulation records to aggregate");
    }
    std::map<TableKey, MeanMetrics> out;
    for (const auto& [key, s] : sums_) {
        out[key] = MeanMetrics{s.rmse_sum / s.n, s.tau_sum / s.n, s.n};
    }
    return out;
}

std::map<TableKey, MeanMetrics> aggregate_table1(const std::vector<SimulationRecord>& records) {
    Table1Accumulator acc;
    for (const auto& r : records) acc.add(r);
    return acc.finalize();
}

const char* to_string(MetricTag m) { return m == MetricTag::rmse ? "rmse" : "tau"; }

MetricTag metric_from_string(std::string_view s) {
    if (s == "rmse") return MetricTag::rmse;
    if (s == "tau") return MetricTag::tau;
    throw Error(errc::invalid_config, "unknown metric '" + std::string(s) + "' (expected rmse|tau)");
}

std::vector<WinLossOutcome> win_loss(const std::vector<SimulationRecord>& records, MetricTag metric,
                                     double alpha) {
    struct Group {
        std::map<int, double> rw;   // seed -> metric value
        std::map<int, double> gcd;
        std::map<int, double> vif_ratio;
        double lambda1_ratio_sum = 0.0;
        int lambda1_count = 0;
    };
    std::map<std::pair<int, int>, Group> groups;
    for (const auto& r : records) {
        if (r.orth != OrthMethod::johnson) continue;
        const bool is_rw = r.realloc == ReallocMethod::corpa;
        const bool is_gcd = r.realloc == ReallocMethod::regpa;
        if (!is_rw && !is_gcd) continue;
        Group& g = groups[{r.p, r.ev_index}];
        const double value = metric == MetricTag::rmse ? r.mean_rmse : r.mean_tau;
        auto& side = is_rw ? g.rw : g.gcd;
        if (!side.emplace(r.seed_index, value).second) {
            throw Error(errc::unpaired_group, "duplicate seed " + std::to_string(r.seed_index) +
                                                  " in eigenvalue set " + std::to_string(r.ev_index));
        }
        g.vif_ratio[r.seed_index] = r.vif_ratio;
        g.lambda1_ratio_sum += r.lambda1_ratio;
        g.lambda1_count += 1;
    }
    if (groups.empty()) {
        throw Error(errc::empty_group, "no CorPA/Johnson and RegPA/Johnson records found");
    }

    std::vector<WinLossOutcome> outcomes;
    outcomes.reserve(groups.size());
    for (const auto& [key, g] : groups) {
        if (g.rw.size() != g.gcd.size() || g.rw.size() < 2) {
            throw Error(errc::unpaired_group, "eigenvalue set " + std::to_string(key.second) +
                                                  " lacks paired RW/GCD seeds");
        }
        std::vector<double> rw_values, gcd_values;
        int mild = 0;
        for (const auto& [seed, value] : g.rw) {
            auto it = g.gcd.find(seed);
            if (it == g.gcd.end()) {
                throw Error(errc::unpaired_group, "seed " + std::to_string(seed) +
                                                      " present for RW but not GCD in eigenvalue set " +
                                                      std::to_string(key.second));
            }
            rw_values.push_back(value);
            gcd_values.push_back(it->second);
            if (g.vif_ratio.at(seed) < 4.0) ++mild;
        }
        const BetterDirection better =
            metric == MetricTag::rmse ? BetterDirection::lower : BetterDirection::higher;
        const WilcoxonResult w = wilcoxon_signed_rank(rw_values, gcd_values, alpha, better);

        WinLossOutcome o;
        o.comparison_id = "p" + std::to_string(key.first) + ":ev" + std::to_string(key.second);
        o.p = key.first;
        o.ev_index = key.second;
        o.wins_rw = w.winner == Winner::a ? 1 : 0;
        o.wins_gcd = w.winner == Winner::b ? 1 : 0;
        o.ties = w.winner == Winner::tie ? 1 : 0;
        o.alpha = alpha;
        o.lambda1_ratio = g.lambda1_ratio_sum / g.lambda1_count;
        o.mild_fraction = static_cast<double>(mild) / static_cast<double>(rw_values.size());
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

ThresholdSummary threshold_summary(const std::vector<WinLossOutcome>& outcomes, double threshold,
                                   bool mild_only) {
    ThresholdSummary s;
    s.threshold = threshold;
    for (const auto& o : outcomes) {
        if (mild_only && o.mild_fraction < 0.5) continue;
        const long n = o.wins_rw + o.wins_gcd + o.ties;
        if (o.lambda1_ratio < threshold) {
            s.n_below += n;
            s.rw_wins_below += o.wins_rw;
        } else {
            s.n_above += n;
            s.rw_wins_above += o.wins_rw;
        }
    }
    if (s.n_below > 0) s.frac_below = static_cast<double>(s.rw_wins_below) / s.n_below;
    if (s.n_above > 0) s.frac_above = static_cast<double>(s.rw_wins_above) / s.n_above;
    if (s.n_below > 0 && s.n_above > 0) {
        const double pooled =
            static_cast<double>(s.rw_wins_below + s.rw_wins_above) / (s.n_below + s.n_above);
        const double se =
            std::sqrt(pooled * (1.0 - pooled) * (1.0 / s.n_below + 1.0 / s.n_above));
        if (se > 0.0) {
            s.z = (s.frac_below - s.frac_above) / se;
            s.p_one_sided = 0.5 * std::erfc(s.z / std::sqrt(2.0));
        } else {
            s.z = 0.0;
            s.p_one_sided = 1.0;
        }
    }
    return s;
}

} // namespace relimp
