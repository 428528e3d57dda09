#include "relimp/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Cholesky>

namespace relimp {

namespace {

Matrix spectral_power(const CorrelationMatrix& corr, double exponent) {
    const Vector powered = corr.lambdas().array().pow(exponent);
    return corr.eigvecs() * powered.asDiagonal() * corr.eigvecs().transpose();
}

} // namespace

Orthogonalization johnson(const CorrelationMatrix& corr) {
    Orthogonalization o;
    o.method = OrthMethod::johnson;
    o.rotation_q = Matrix::Identity(corr.p(), corr.p());
    o.loading = spectral_power(corr, 0.5);
    o.gamma = spectral_power(corr, -0.5);
    return o;
}

Orthogonalization gram_schmidt(const CorrelationMatrix& corr) {
    Eigen::LLT<Matrix> llt(corr.values());
    if (llt.info() != Eigen::Success) {
        throw Error(errc::cholesky_failure, "correlation matrix is numerically semidefinite");
    }
    const Matrix lower = llt.matrixL();  // Sigma = lower * lower'

    Orthogonalization o;
    o.method = OrthMethod::gs;
    o.loading = lower;
    // Q = Sigma^{1/2} R^{-1} with R = lower'; solve lower * Q' = Sigma^{1/2}.
    const Matrix sqrt_sigma = spectral_power(corr, 0.5);
    o.rotation_q = lower.triangularView<Eigen::Lower>().solve(sqrt_sigma).transpose();
    o.gamma = spectral_power(corr, -0.5) * o.rotation_q;
    return o;
}

Orthogonalization principal_components(const CorrelationMatrix& corr) {
    Orthogonalization o;
    o.method = OrthMethod::pc;
    o.rotation_q = corr.eigvecs();
    o.loading = corr.eigvecs() * corr.lambdas().cwiseSqrt().asDiagonal();
    o.gamma = corr.eigvecs() * corr.lambdas().cwiseSqrt().cwiseInverse().asDiagonal();
    return o;
}

double varimax_objective(const Matrix& loading) {
    const int p = static_cast<int>(loading.rows());
    double total = 0.0;
    for (int j = 0; j < loading.cols(); ++j) {
        double sum_sq = 0.0;
        double sum_quad = 0.0;
        for (int i = 0; i < p; ++i) {
            const double sq = loading(i, j) * loading(i, j);
            sum_sq += sq;
            sum_quad += sq * sq;
        }
        total += sum_quad / p - (sum_sq * sum_sq) / (static_cast<double>(p) * p);
    }
    return total;
}

Orthogonalization varimax(const CorrelationMatrix& corr, double tol, int max_iter) {
    const int p = corr.p();
    Orthogonalization base = johnson(corr);

    Matrix loading = base.loading;
    Matrix q = Matrix::Identity(p, p);
    double objective = varimax_objective(loading);

    bool converged = false;
    for (int sweep = 0; sweep < max_iter && !converged; ++sweep) {
        for (int j = 0; j < p - 1; ++j) {
            for (int k = j + 1; k < p; ++k) {
                double sum_u = 0.0, sum_v = 0.0, sum_c = 0.0, sum_d = 0.0;
                for (int i = 0; i < p; ++i) {
                    const double x = loading(i, j);
                    const double y = loading(i, k);
                    const double u = x * x - y * y;
                    const double v = 2.0 * x * y;
                    sum_u += u;
                    sum_v += v;
                    sum_c += u * u - v * v;
                    sum_d += u * v;
                }
                const double num = 2.0 * (sum_d - sum_u * sum_v / p);
                const double den = sum_c - (sum_u * sum_u - sum_v * sum_v) / p;
                const double angle = 0.25 * std::atan2(num, den);
                if (std::abs(angle) < 1e-14) continue;
                const double c = std::cos(angle);
                const double s = std::sin(angle);
                // Planar rotation of columns j, k in both the loading and Q.
                for (Matrix* m : {&loading, &q}) {
                    for (int i = 0; i < p; ++i) {
                        const double a = (*m)(i, j);
                        const double b = (*m)(i, k);
                        (*m)(i, j) = c * a + s * b;
                        (*m)(i, k) = -s * a + c * b;
                    }
                }
            }
        }
        const double next = varimax_objective(loading);
        if (next - objective < tol) converged = true;
        objective = std::max(objective, next);
    }

    Orthogonalization o;
    o.method = OrthMethod::vm;
    o.rotation_q = q;
    o.loading = std::move(loading);
    o.gamma = base.gamma * q;
    o.converged = converged;
    return o;
}

Orthogonalization make_orthogonalization(OrthMethod method, const CorrelationMatrix& corr) {
    switch (method) {
        case OrthMethod::johnson: return johnson(corr);
        case OrthMethod::gs: return gram_schmidt(corr);
        case OrthMethod::pc: return principal_components(corr);
        case OrthMethod::vm: return varimax(corr);
    }
    throw Error(errc::invalid_config, "unknown orthogonalization method");
}

Orthogonalization canonicalized(const Orthogonalization& orth) {
    const int p = static_cast<int>(orth.loading.rows());

    // Column assignment maximizing sum_i |l_{i, perm(i)}|. Exhaustive for
    // small p, greedy above; comparisons in tests stay within p <= 8.
    std::vector<int> best_perm(p);
    std::iota(best_perm.begin(), best_perm.end(), 0);
    if (p <= 8) {
        std::vector<int> perm = best_perm;
        double best = -1.0;
        do {
            double score = 0.0;
            for (int i = 0; i < p; ++i) score += std::abs(orth.loading(i, perm[i]));
            if (score > best) {
                best = score;
                best_perm = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        std::vector<bool> used(p, false);
        for (int i = 0; i < p; ++i) {
            int arg = -1;
            double best = -1.0;
            for (int j = 0; j < p; ++j) {
                if (!used[j] && std::abs(orth.loading(i, j)) > best) {
                    best = std::abs(orth.loading(i, j));
                    arg = j;
                }
            }
            used[arg] = true;
            best_perm[i] = arg;
        }
    }

    Orthogonalization out;
    out.method = orth.method;
    out.converged = orth.converged;
    out.rotation_q.resize(p, p);
    out.loading.resize(p, p);
    out.gamma.resize(p, p);
    for (int i = 0; i < p; ++i) {
        const int src = best_perm[i];
        const double sign = orth.loading(i, src) < 0.0 ? -1.0 : 1.0;
        out.rotation_q.col(i) = sign * orth.rotation_q.col(src);
        out.loading.col(i) = sign * orth.loading.col(src);
        out.gamma.col(i) = sign * orth.gamma.col(src);
    }
    return out;
}

Vector orthogonal_response_correlations(const Orthogonalization& orth, const AugmentedProblem& problem) {
    if (orth.gamma.rows() != problem.p()) {
        throw Error(errc::dimension_mismatch, "orthogonalization built for p = " +
                                                  std::to_string(orth.gamma.rows()) + ", problem has p = " +
                                                  std::to_string(problem.p()));
    }
    // gamma = Gamma_Z * Q with Gamma_Z symmetric, so gamma' rho = Q' Gamma_Z rho.
    return orth.gamma.transpose() * problem.rho_xy();
}

} // namespace relimp
