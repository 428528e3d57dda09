#include "relimp/simgen.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "relimp/dominance.hpp"
#include "relimp/ortho.hpp"
#include "relimp/realloc.hpp"

namespace relimp {

EigenSpectrum sample_simplex(int p, RngStream stream) {
    if (p < 2) throw Error(errc::not_square, "need p >= 2");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> cuts(p - 1);
        for (double& c : cuts) c = stream.uniform01();
        std::sort(cuts.begin(), cuts.end());

        Vector lambdas(p);
        double prev = 0.0;
        for (int i = 0; i < p - 1; ++i) {
            lambdas(i) = (cuts[i] - prev) * p;
            prev = cuts[i];
        }
        lambdas(p - 1) = (1.0 - prev) * p;
        std::sort(lambdas.data(), lambdas.data() + p, std::greater<double>());
        if (lambdas(p - 1) > 1e-8) {
            return EigenSpectrum{p, std::move(lambdas)};
        }
    }
    throw Error(errc::sampler_stuck, "1000 near-degenerate simplex draws in a row");
}

Matrix random_orthogonal(int p, RngStream stream) {
    if (p < 2) throw Error(errc::not_square, "need p >= 2");
    Matrix gauss(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) gauss(i, j) = stream.normal();
    }
    Eigen::HouseholderQR<Matrix> qr(gauss);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (int j = 0; j < p; ++j) {
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    }
    return q;
}

CorrelationMatrix map_correlation(const EigenSpectrum& spectrum, int seed_index, RngStream stream,
                                  double tol, int max_iter) {
    const int p = spectrum.p;
    const Vector target_desc = spectrum.lambdas;
    const Vector target_asc = target_desc.reverse();

    const Matrix q0 = random_orthogonal(p, stream.derive("mapseed", static_cast<std::uint64_t>(seed_index)));
    Matrix m = q0 * target_desc.asDiagonal() * q0.transpose();
    m = 0.5 * (m + m.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> es;
    double spectrum_gap = 0.0;
    double diag_gap = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        es.compute(m);
        spectrum_gap = (es.eigenvalues() - target_asc).cwiseAbs().maxCoeff();
        diag_gap = (m.diagonal().array() - 1.0).abs().maxCoeff();
        if (spectrum_gap < tol && diag_gap < tol) {
            return validate_correlation(m);
        }
        // Restore the spectrum, then the unit diagonal; the diagonal step
        // is exact, so the spectrum residual is the reported gap.
        m = es.eigenvectors() * target_asc.asDiagonal() * es.eigenvectors().transpose();
        m = 0.5 * (m + m.transpose());
        m.diagonal().setOnes();
    }
    std::ostringstream os;
    os << "alternating projections stalled after " << max_iter << " cycles (spectrum gap "
       << spectrum_gap << ", diagonal gap " << diag_gap << ")";
    throw Error(errc::no_convergence, os.str());
}

Vector sample_sphere(int p, RngStream stream) {
    if (p < 2) throw Error(errc::not_square, "need p >= 2");
    Vector v(p);
    double norm = 0.0;
    do {
        for (int i = 0; i < p; ++i) v(i) = stream.normal();
        norm = v.norm();
    } while (norm < 1e-100);
    return v / norm;
}

ResponseStructure build_response(const CorrelationMatrix& corr, const Vector& u, double r_squared) {
    if (!(r_squared > 0.0 && r_squared <= 1.0)) {
        throw Error(errc::invalid_r2, "r_squared must lie in (0, 1]");
    }
    if (u.size() != corr.p()) {
        throw Error(errc::dimension_mismatch, "u has length " + std::to_string(u.size()));
    }
    const Vector unit = u / u.norm();
    Vector rho_zy = std::sqrt(r_squared) * unit;
    const Matrix loading =
        corr.eigvecs() * corr.lambdas().cwiseSqrt().asDiagonal() * corr.eigvecs().transpose();
    Vector rho_xy = loading * rho_zy;
    return ResponseStructure{make_augmented(corr, std::move(rho_xy)), std::move(rho_zy)};
}

void validate_config(const SimulationConfig& config) {
    if (config.p_min < 2 || config.p_min > config.p_max || config.p_max > kMaxPredictors) {
        throw Error(errc::invalid_config, "need 2 <= p_min <= p_max <= " + std::to_string(kMaxPredictors));
    }
    if (config.n_ev < 1 || config.n_seeds < 1 || config.n_responses < 1) {
        throw Error(errc::invalid_config, "counts must be >= 1");
    }
    if (!(config.r_squared > 0.0 && config.r_squared <= 1.0)) {
        throw Error(errc::invalid_config, "r_squared must lie in (0, 1]");
    }
    if (config.orth_set.empty() || config.realloc_set.empty()) {
        throw Error(errc::invalid_config, "orthogonalization and reallocation sets must be nonempty");
    }
    if (config.map_tol <= 0.0 || config.map_max_iter < 1) {
        throw Error(errc::invalid_config, "map_tol must be positive and map_max_iter >= 1");
    }
    if (config.threads < 0) {
        throw Error(errc::invalid_config, "threads must be >= 0");
    }
}

int resolve_threads(const SimulationConfig& config) {
    if (config.threads > 0) return config.threads;
    if (const char* env = std::getenv("RELIMP_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) return static_cast<int>(parsed);
    }
    return 1;
}

std::size_t count_tasks(const SimulationConfig& config) {
    return static_cast<std::size_t>(config.p_max - config.p_min + 1) *
           static_cast<std::size_t>(config.n_ev);
}

namespace {

TaskResult compute_task(const SimulationConfig& cfg, std::size_t task_index, int p, int ev) {
    const RngStream master(cfg.master_seed);
    const auto p_tag = static_cast<std::uint64_t>(p);
    const auto ev_tag = static_cast<std::uint64_t>(ev);

    const EigenSpectrum spectrum = sample_simplex(p, master.derive("simplex", p_tag).derive("ev", ev_tag));

    TaskResult out;
    out.task_index = task_index;
    out.p = p;
    out.ev_index = ev;

    const double sqrt_r = std::sqrt(cfg.r_squared);
    const std::size_t n_combos = cfg.orth_set.size() * cfg.realloc_set.size();

    for (int seed = 0; seed < cfg.n_seeds; ++seed) {
        const CorrelationMatrix corr = map_correlation(
            spectrum, seed, master.derive("map", p_tag).derive("ev", ev_tag), cfg.map_tol,
            cfg.map_max_iter);
        const SubsetEngine engine(corr);
        const Scenario scenario = classify_scenario(corr);
        const double lambda1 = corr.lambdas()(0);
        const double vif_max = scenario.vif_ratio * p;
        const Matrix johnson_loading =
            corr.eigvecs() * corr.lambdas().cwiseSqrt().asDiagonal() * corr.eigvecs().transpose();

        std::vector<Orthogonalization> orths;
        orths.reserve(cfg.orth_set.size());
        for (OrthMethod m : cfg.orth_set) orths.push_back(make_orthogonalization(m, corr));

        std::vector<ReallocationMatrix> reallocs;
        reallocs.reserve(n_combos);
        for (const Orthogonalization& orth : orths) {
            for (ReallocMethod m : cfg.realloc_set) {
                switch (m) {
                    case ReallocMethod::gda: reallocs.push_back(gda_reallocation(orth, engine)); break;
                    case ReallocMethod::corpa: reallocs.push_back(corpa(orth)); break;
                    case ReallocMethod::regpa: reallocs.push_back(regpa(orth)); break;
                    case ReallocMethod::ida: reallocs.push_back(ida(p, orth.method)); break;
                }
            }
        }

        std::vector<double> rmse_sum(n_combos, 0.0);
        std::vector<double> tau_sum(n_combos, 0.0);

        for (int resp = 0; resp < cfg.n_responses; ++resp) {
            const Vector u = sample_sphere(p, master.derive("sphere", p_tag)
                                                  .derive("ev", ev_tag)
                                                  .derive("seed", static_cast<std::uint64_t>(seed))
                                                  .derive("resp", static_cast<std::uint64_t>(resp)));
            const Vector rho_zy = sqrt_r * u;
            const Vector rho_xy = johnson_loading * rho_zy;
            const Vector gd = SubsetEngine::dominance_from_table(engine.r_squared_table(rho_xy), p);

            std::size_t combo = 0;
            for (const Orthogonalization& orth : orths) {
                const Vector rho_tilde = orth.rotation_q.transpose() * rho_zy;
                const Vector contributions = rho_tilde.array().square();
                for (std::size_t k = 0; k < cfg.realloc_set.size(); ++k, ++combo) {
                    const Vector d = reallocs[combo].values * contributions;
                    const double e = rmse(gd, d);
                    const double t = kendall_tau(gd, d).tau;
                    rmse_sum[combo] += e;
                    tau_sum[combo] += t;
                    if (cfg.per_response) {
                        out.details.push_back(ResponseDetail{p, ev, seed, resp, orth.method,
                                                             cfg.realloc_set[k], e, t});
                    }
                }
            }
        }

        std::size_t combo = 0;
        for (OrthMethod orth_m : cfg.orth_set) {
            for (ReallocMethod realloc_m : cfg.realloc_set) {
                SimulationRecord rec;
                rec.p = p;
                rec.ev_index = ev;
                rec.seed_index = seed;
                rec.orth = orth_m;
                rec.realloc = realloc_m;
                rec.mean_rmse = rmse_sum[combo] / cfg.n_responses;
                rec.mean_tau = tau_sum[combo] / cfg.n_responses;
                rec.lambda1 = lambda1;
                rec.vif_max = vif_max;
                rec.lambda1_ratio = scenario.lambda1_ratio;
                rec.vif_ratio = scenario.vif_ratio;
                rec.scenario = scenario.label;
                rec.n_responses = cfg.n_responses;
                out.records.push_back(rec);
                ++combo;
            }
        }
    }
    return out;
}

struct TaskSpec {
    int p;
    int ev;
};

} // namespace

void run_simulation(const SimulationConfig& config, const std::function<void(TaskResult&&)>& on_task) {
    validate_config(config);

    std::vector<TaskSpec> tasks;
    tasks.reserve(count_tasks(config));
    for (int p = config.p_min; p <= config.p_max; ++p) {
        for (int ev = 0; ev < config.n_ev; ++ev) tasks.push_back(TaskSpec{p, ev});
    }

    const int n_threads = std::max(1, std::min<int>(resolve_threads(config), static_cast<int>(tasks.size())));

    if (n_threads == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            on_task(compute_task(config, i, tasks[i].p, tasks[i].ev));
        }
        return;
    }

    // Workers fill slots in any order; delivery stays in task order so the
    // output is byte-identical to the serial run.
    std::vector<std::optional<TaskResult>> slots(tasks.size());
    std::vector<std::exception_ptr> failures(tasks.size());
    std::vector<char> ready(tasks.size(), 0);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            std::optional<TaskResult> result;
            std::exception_ptr failure;
            try {
                result = compute_task(config, i, tasks[i].p, tasks[i].ev);
            } catch (...) {
                failure = std::current_exception();
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                slots[i] = std::move(result);
                failures[i] = failure;
                ready[i] = 1;
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);

    std::exception_ptr first_failure;
    for (std::size_t i = 0; i < tasks.size() && !first_failure; ++i) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return ready[i] == 1; });
        if (failures[i]) {
            first_failure = failures[i];
            next.store(tasks.size());  // stop handing out work
        } else {
            TaskResult result = std::move(*slots[i]);
            slots[i].reset();
            lock.unlock();
            on_task(std::move(result));
        }
    }
    for (auto& t : pool) t.join();
    if (first_failure) std::rethrow_exception(first_failure);
}

std::vector<SimulationRecord> run_simulation(const SimulationConfig& config) {
    std::vector<SimulationRecord> records;
    run_simulation(config, [&](TaskResult&& task) {
        records.insert(records.end(), task.records.begin(), task.records.end());
    });
    return records;
}

} // namespace relimp
