#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "relimp/corrmat.hpp"
#include "relimp/metrics.hpp"
#include "relimp/rng.hpp"
#include "relimp/types.hpp"

namespace relimp {

/// Eigenvalue set on the trace-p simplex: sorted descending, strictly
/// positive, summing to p.
struct EigenSpectrum {
    int p = 0;
    Vector lambdas;
};

/// Uniform draw from the ordered eigenvalue simplex via spacings of p-1
/// sorted uniforms, scaled by p. Near-degenerate draws (lambda_p <= 1e-8)
/// are resampled; 1000 failed attempts raise SamplerStuck.
EigenSpectrum sample_simplex(int p, RngStream stream);

/// Haar-distributed orthogonal matrix: QR of a standard-normal matrix with
/// the R diagonal signs absorbed into Q.
Matrix random_orthogonal(int p, RngStream stream);

/// Correlation matrix with the prescribed spectrum by alternating
/// projections: starting from Q0 diag(lambda) Q0' (Q0 seeded by
/// (stream, seed_index)), alternately restore the spectrum and overwrite
/// the diagonal with ones until both residuals drop below tol. The result
/// passes full correlation-matrix validation. Throws NoConvergence with
/// the final residuals when max_iter cycles are exhausted.
CorrelationMatrix map_correlation(const EigenSpectrum& spectrum, int seed_index, RngStream stream,
                                  double tol = 1e-8, int max_iter = 25000);

/// Uniform unit vector: normalized standard-normal draw.
Vector sample_sphere(int p, RngStream stream);

struct ResponseStructure {
    AugmentedProblem problem;
    Vector rho_zy;  // response correlations in the Johnson basis
};

/// Response structure with prescribed R^2: rho_zy = sqrt(r_squared) * u and
/// rho_xy = L_Z rho_zy. Throws InvalidR2 outside (0, 1].
ResponseStructure build_response(const CorrelationMatrix& corr, const Vector& u, double r_squared);

struct SimulationConfig {
    int p_min = 3;
    int p_max = 3;
    int n_ev = 1000;
    int n_seeds = 10;
    int n_responses = 100;
    double r_squared = 0.8;
    std::uint64_t master_seed = 1;
    std::vector<OrthMethod> orth_set{kAllOrthMethods.begin(), kAllOrthMethods.end()};
    std::vector<ReallocMethod> realloc_set{kAllReallocMethods.begin(), kAllReallocMethods.end()};
    std::string out_path;
    bool per_response = false;
    double map_tol = 1e-8;
    int map_max_iter = 25000;
    int threads = 0;  // 0 -> RELIMP_THREADS env var, else 1
};

/// Throws InvalidConfig unless 2 <= p_min <= p_max <= 20, counts >= 1,
/// r_squared in (0, 1], and the method sets are nonempty.
void validate_config(const SimulationConfig& config);

int resolve_threads(const SimulationConfig& config);

/// Per-response metric detail, emitted only when per_response is set.
struct ResponseDetail {
    int p, ev_index, seed_index, response_index;
    OrthMethod orth;
    ReallocMethod realloc;
    double rmse_value;
    double tau_value;
};

/// All records of one (p, eigenvalue-set) task, delivered in deterministic
/// task order regardless of worker parallelism.
struct TaskResult {
    std::size_t task_index = 0;
    int p = 0;
    int ev_index = 0;
    std::vector<SimulationRecord> records;
    std::vector<ResponseDetail> details;
};

std::size_t count_tasks(const SimulationConfig& config);

/// Runs the Monte Carlo design: for every p and eigenvalue set, n_seeds
/// correlation matrices, each evaluated on n_responses sphere-uniform
/// responses against GD for every (orthogonalization, reallocation) pair.
/// on_task is invoked in task order; all output is a pure function of
/// (master_seed, config).
void run_simulation(const SimulationConfig& config, const std::function<void(TaskResult&&)>& on_task);

/// Convenience variant collecting every record.
std::vector<SimulationRecord> run_simulation(const SimulationConfig& config);

} // namespace relimp
