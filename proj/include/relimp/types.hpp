#pragma once

#include <array>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace relimp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Orthogonalization methods, ordered as reported (Johnson first).
enum class OrthMethod { johnson, gs, pc, vm };

/// Reallocation methods, ordered benchmark-first (GDA, CorPA, RegPA, IdA).
enum class ReallocMethod { gda, corpa, regpa, ida };

/// Four-way classification by lambda1/sqrt(p) (threshold 1.5) and
/// VIF_max/p (threshold 4).
enum class ScenarioLabel { s11, s12, s21, s22 };

inline constexpr std::array<OrthMethod, 4> kAllOrthMethods = {
    OrthMethod::johnson, OrthMethod::gs, OrthMethod::pc, OrthMethod::vm};

inline constexpr std::array<ReallocMethod, 4> kAllReallocMethods = {
    ReallocMethod::gda, ReallocMethod::corpa, ReallocMethod::regpa, ReallocMethod::ida};

const char* to_string(OrthMethod m);     // "johnson", "gs", "pc", "vm"
const char* display_name(OrthMethod m);  // "Johnson", "GS", "PC", "VM"
OrthMethod orth_from_string(std::string_view s);

const char* to_string(ReallocMethod m);     // "gda", "corpa", "regpa", "ida"
const char* display_name(ReallocMethod m);  // "GDA", "CorPA", "RegPA", "IdA"
ReallocMethod realloc_from_string(std::string_view s);

const char* to_string(ScenarioLabel s);  // "1.1", "1.2", "2.1", "2.2"
ScenarioLabel scenario_from_string(std::string_view s);

/// Importance shares in units of R^2, one entry per predictor.
/// Sums to the producing problem's R^2 (efficiency).
struct ImportanceVector {
    Vector values;
    std::string measure;
};

/// p x p nonnegative column-stochastic matrix of shares a_ij: the
/// proportion of z~_j importance allocated to x_i.
struct ReallocationMatrix {
    Matrix values;
    ReallocMethod method;
    OrthMethod orth_method;
};

struct Scenario {
    ScenarioLabel label;
    double lambda1_ratio;  // lambda1 / sqrt(p)
    double vif_ratio;      // VIF_max / p
};

} // namespace relimp
