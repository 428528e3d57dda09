#include "relimp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "relimp/csv.hpp"
#include "relimp/dominance.hpp"
#include "relimp/ortho.hpp"

namespace relimp {

const char* recommendation_for(ScenarioLabel label) {
    switch (label) {
        case ScenarioLabel::s11:
            return "RW is a suitable choice (mild first principal component, mild multicollinearity).";
        case ScenarioLabel::s12:
            return "Prefer GCD: a strong first principal component exposes RW to the leveling problem.";
        case ScenarioLabel::s21:
            return "Prefer RW: severe multicollinearity exposes GCD to a priori bias.";
        case ScenarioLabel::s22:
            return "Use RW with caution: both the leveling problem and a priori bias are likely.";
    }
    return "";
}

namespace {

Vector normalized_to_100(const Vector& v) {
    const double total = v.sum();
    return v * (100.0 / total);
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    if (std::string_view(buf) == "-0.00") return "0.00";
    return buf;
}

} // namespace

AnalysisReport analyze_problem(const AugmentedProblem& problem, std::vector<std::string> names) {
    const int p = problem.p();
    AnalysisReport report;
    if (names.empty()) {
        for (int i = 1; i <= p; ++i) names.push_back("x" + std::to_string(i));
    }
    if (static_cast<int>(names.size()) != p) {
        throw Error(errc::dimension_mismatch, "name count does not match predictor count");
    }
    report.names = std::move(names);
    report.r_squared = problem.r_squared();
    report.scenario = classify_scenario(problem.corr());
    report.recommendation = recommendation_for(report.scenario.label);
    report.vif_values = vif(problem.corr());

    const Orthogonalization z = johnson(problem.corr());
    const Vector rho_zy = orthogonal_response_correlations(z, problem);
    const ReallocationMatrix regpa_z = regpa(z);
    report.regpa_row_sums = regpa_z.values.rowwise().sum();

    report.measures["RW"] = evaluate_orm(corpa(z), rho_zy).values;
    report.measures["GCD"] = evaluate_orm(regpa_z, rho_zy).values;
    report.measures["CAR"] = evaluate_orm(ida(p), rho_zy).values;

    report.gd_available = p <= kMaxPredictors;
    if (report.gd_available) {
        const SubsetEngine engine(problem.corr());
        report.measures["GD"] =
            SubsetEngine::dominance_from_table(engine.r_squared_table(problem.rho_xy()), p);
        report.measures["GDA_ORM"] = evaluate_orm(gda_reallocation(z, engine), rho_zy).values;
    } else {
        report.warning = "GD and GDA skipped: p = " + std::to_string(p) +
                         " exceeds the exact-enumeration cap of " + std::to_string(kMaxPredictors);
    }

    for (const auto& [name, values] : report.measures) {
        report.normalized[name] = normalized_to_100(values);
    }
    return report;
}

namespace {

constexpr const char* kMeasureOrder[] = {"GD", "GCD", "RW", "CAR", "GDA_ORM"};

std::string display_measure(const std::string& key) { return key == "GDA_ORM" ? "GDA" : key; }

void append_row(std::ostringstream& os, const std::string& label, const Vector& values, int name_w) {
    os << "  " << label << std::string(name_w > static_cast<int>(label.size())
                                           ? name_w - static_cast<int>(label.size())
                                           : 1, ' ');
    for (int i = 0; i < values.size(); ++i) {
        std::string cell = fixed2(values(i));
        os << std::string(cell.size() < 9 ? 9 - cell.size() : 1, ' ') << cell;
    }
    os << '\n';
}

} // namespace

std::string render_text(const AnalysisReport& report) {
    std::ostringstream os;
    const int p = static_cast<int>(report.names.size());
    os << "Relative importance analysis (p = " << p << ", R^2 = " << fixed2(report.r_squared) << ")\n";
    os << "  lambda1/sqrt(p) = " << fixed2(report.scenario.lambda1_ratio)
       << "   VIF_max/p = " << fixed2(report.scenario.vif_ratio) << "   scenario "
       << to_string(report.scenario.label) << '\n';
    os << "  recommendation: " << report.recommendation << '\n';
    if (!report.warning.empty()) os << "  warning: " << report.warning << '\n';
    os << '\n';

    int name_w = 16;
    std::ostringstream header;
    header << "  " << "measure" << std::string(name_w - 7, ' ');
    for (const auto& name : report.names) {
        header << std::string(name.size() < 9 ? 9 - name.size() : 1, ' ') << name;
    }
    os << header.str() << '\n';

    for (const char* key : kMeasureOrder) {
        auto it = report.normalized.find(key);
        if (it == report.normalized.end()) continue;
        append_row(os, display_measure(key) + "%", it->second, name_w);
    }
    append_row(os, "RegPA row sum", report.regpa_row_sums, name_w);
    append_row(os, "VIF", report.vif_values, name_w);
    if (report.normalized.count("GD")) {
        const Vector& gd = report.normalized.at("GD");
        append_row(os, "GCD% - GD%", Vector(report.normalized.at("GCD") - gd), name_w);
        append_row(os, "RW% - GD%", Vector(report.normalized.at("RW") - gd), name_w);
    }
    return os.str();
}

std::string render_csv(const AnalysisReport& report) {
    std::ostringstream os;
    os << "field,name,value\n";
    auto emit_vector = [&](const std::string& field, const Vector& values) {
        for (std::size_t i = 0; i < report.names.size(); ++i) {
            os << field << ',' << report.names[i] << ',' << format_double(values(i)) << '\n';
        }
    };
    for (const char* key : kMeasureOrder) {
        auto it = report.measures.find(key);
        if (it == report.measures.end()) continue;
        emit_vector(display_measure(key), it->second);
        emit_vector(display_measure(key) + "_pct", report.normalized.at(key));
    }
    emit_vector("VIF", report.vif_values);
    emit_vector("RegPA_row_sum", report.regpa_row_sums);
    os << "r_squared,," << format_double(report.r_squared) << '\n';
    os << "lambda1_over_sqrt_p,," << format_double(report.scenario.lambda1_ratio) << '\n';
    os << "vif_max_over_p,," << format_double(report.scenario.vif_ratio) << '\n';
    os << "scenario,," << to_string(report.scenario.label) << '\n';
    os << "recommendation,,\"" << report.recommendation << "\"\n";
    return os.str();
}

std::string render_json(const AnalysisReport& report) {
    nlohmann::json j;
    j["names"] = report.names;
    auto vec = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    for (const auto& [key, values] : report.measures) {
        j["measures"][display_measure(key)] = vec(values);
        j["normalized"][display_measure(key)] = vec(report.normalized.at(key));
    }
    j["vif"] = vec(report.vif_values);
    j["regpa_row_sums"] = vec(report.regpa_row_sums);
    j["r_squared"] = report.r_squared;
    j["lambda1_over_sqrt_p"] = report.scenario.lambda1_ratio;
    j["vif_max_over_p"] = report.scenario.vif_ratio;
    j["scenario"] = to_string(report.scenario.label);
    j["recommendation"] = report.recommendation;
    if (!report.warning.empty()) j["warning"] = report.warning;
    return j.dump(2) + "\n";
}

std::string format_table1(const std::map<TableKey, MeanMetrics>& table) {
    std::set<int> ps;
    std::set<ReallocMethod> reallocs;
    std::set<OrthMethod> orths;
    for (const auto& [key, _] : table) {
        ps.insert(key.p);
        reallocs.insert(key.realloc);
        orths.insert(key.orth);
    }

    std::ostringstream os;
    os << "Mean RMSE / Kendall tau by reallocation and orthogonalization\n";
    os << "  A      Z~      ";
    for (int p : ps) {
        std::string head = "p=" + std::to_string(p);
        os << head << std::string(head.size() < 14 ? 14 - head.size() : 1, ' ');
    }
    os << '\n';
    for (ReallocMethod a : kAllReallocMethods) {
        if (!reallocs.count(a)) continue;
        bool first = true;
        for (OrthMethod z : kAllOrthMethods) {
            if (!orths.count(z)) continue;
            const std::string a_label = first ? display_name(a) : "";
            os << "  " << a_label << std::string(a_label.size() < 7 ? 7 - a_label.size() : 1, ' ');
            const std::string z_label = display_name(z);
            os << z_label << std::string(z_label.size() < 8 ? 8 - z_label.size() : 1, ' ');
            for (int p : ps) {
                auto it = table.find(TableKey{a, z, p});
                std::string cell =
                    it == table.end() ? "-" : fixed2(it->second.mean_rmse) + " / " + fixed2(it->second.mean_tau);
                os << cell << std::string(cell.size() < 14 ? 14 - cell.size() : 1, ' ');
            }
            os << '\n';
            first = false;
        }
    }
    return os.str();
}

std::string format_threshold_summary(const ThresholdSummary& all, const ThresholdSummary& mild) {
    std::ostringstream os;
    auto line = [&](const char* label, const ThresholdSummary& s) {
        os << "  " << label << ": RW win fraction " << fixed2(s.frac_below) << " (" << s.rw_wins_below
           << "/" << s.n_below << ") below lambda1/sqrt(p) = " << fixed2(s.threshold) << ", "
           << fixed2(s.frac_above) << " (" << s.rw_wins_above << "/" << s.n_above
           << ") at or above; z = " << fixed2(s.z) << ", one-sided p = " << format_double(s.p_one_sided)
           << '\n';
    };
    os << "Win-loss threshold summary\n";
    line("all sets ", all);
    line("mild sets", mild);
    return os.str();
}

} // namespace relimp
