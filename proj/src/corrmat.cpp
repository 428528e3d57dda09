#include "relimp/corrmat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace relimp {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

Vector CorrelationMatrix::solve(const Vector& rhs) const {
    const Vector scaled = (eigvecs_.transpose() * rhs).cwiseQuotient(lambdas_);
    return eigvecs_ * scaled;
}

CorrelationMatrix validate_correlation(const Matrix& m, double diag_tolerance) {
    if (m.rows() != m.cols()) {
        throw Error(errc::not_square,
                    "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const int p = static_cast<int>(m.rows());
    if (p < 2) {
        throw Error(errc::not_square, "need at least 2 predictors, got " + std::to_string(p));
    }
    if (!m.allFinite()) {
        throw Error(errc::missing_values, "matrix contains NaN or infinite entries");
    }

    double max_diag_dev = 0.0;
    for (int i = 0; i < p; ++i) max_diag_dev = std::max(max_diag_dev, std::abs(m(i, i) - 1.0));
    if (max_diag_dev > diag_tolerance) {
        throw Error(errc::diagonal_not_unit, "max |diag - 1| = " + fmt(max_diag_dev));
    }
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            if (i != j && std::abs(m(i, j)) > 1.0 + 1e-12) {
                throw Error(errc::off_diagonal_out_of_range,
                            "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + fmt(m(i, j)));
            }
        }
    }

    CorrelationMatrix out;
    out.values_ = 0.5 * (m + m.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> es(out.values_);
    if (es.info() != Eigen::Success) {
        throw Error(errc::not_positive_definite, "eigendecomposition failed");
    }

    // Eigen reports ascending eigenvalues; store descending with the
    // largest-magnitude entry of each eigenvector made positive.
    out.lambdas_ = es.eigenvalues().reverse();
    out.eigvecs_ = es.eigenvectors().rowwise().reverse();
    for (int j = 0; j < p; ++j) {
        int idx = 0;
        out.eigvecs_.col(j).cwiseAbs().maxCoeff(&idx);
        if (out.eigvecs_(idx, j) < 0.0) out.eigvecs_.col(j) *= -1.0;
    }

    if (out.lambdas_(p - 1) <= kEigenvalueFloor) {
        throw Error(errc::not_positive_definite, "lambda_min = " + fmt(out.lambdas_(p - 1)));
    }
    return out;
}

AugmentedProblem make_augmented(CorrelationMatrix corr, Vector rho_xy) {
    if (rho_xy.size() != corr.p()) {
        throw Error(errc::dimension_mismatch, "rho_xy length " + std::to_string(rho_xy.size()) +
                                                  " for p = " + std::to_string(corr.p()));
    }
    if (!rho_xy.allFinite()) {
        throw Error(errc::missing_values, "rho_xy contains NaN or infinite entries");
    }
    const double r2 = rho_xy.dot(corr.solve(rho_xy));
    // Bordered PSD constraint: R^2 may not exceed 1.
    if (r2 > 1.0 + 1e-10 || r2 < -1e-12) {
        throw Error(errc::invalid_r2, "implied R^2 = " + fmt(r2) + " outside [0, 1]");
    }
    return AugmentedProblem(std::move(corr), std::move(rho_xy), r2);
}

Vector vif(const CorrelationMatrix& corr) {
    const int p = corr.p();
    Vector out(p);
    // diag(Sigma^{-1}) = sum_k v_ik^2 / lambda_k
    for (int i = 0; i < p; ++i) {
        double acc = 0.0;
        for (int k = 0; k < p; ++k) {
            const double v = corr.eigvecs()(i, k);
            acc += v * v / corr.lambdas()(k);
        }
        out(i) = acc;
    }
    return out;
}

double subset_r_squared(const AugmentedProblem& problem, const std::vector<int>& subset) {
    if (subset.empty()) return 0.0;
    const int p = problem.p();
    for (int idx : subset) {
        if (idx < 0 || idx >= p) {
            throw Error(errc::index_out_of_range, "predictor index " + std::to_string(idx));
        }
    }
    const int k = static_cast<int>(subset.size());
    Matrix sigma(k, k);
    Vector rho(k);
    for (int a = 0; a < k; ++a) {
        rho(a) = problem.rho_xy()(subset[a]);
        for (int b = 0; b < k; ++b) sigma(a, b) = problem.corr().values()(subset[a], subset[b]);
    }
    Eigen::LLT<Matrix> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw Error(errc::cholesky_failure, "subset correlation block is not positive definite");
    }
    return rho.dot(llt.solve(rho));
}

Scenario classify_scenario(const CorrelationMatrix& corr) {
    const double p = static_cast<double>(corr.p());
    Scenario s;
    s.lambda1_ratio = corr.lambdas()(0) / std::sqrt(p);
    s.vif_ratio = vif(corr).maxCoeff() / p;
    const bool mild_collinearity = s.vif_ratio < 4.0;
    const bool mild_component = s.lambda1_ratio < 1.5;
    if (mild_collinearity) {
        s.label = mild_component ? ScenarioLabel::s11 : ScenarioLabel::s12;
    } else {
        s.label = mild_component ? ScenarioLabel::s21 : ScenarioLabel::s22;
    }
    return s;
}

Dataset ingest_dataset(const Matrix& rows, const std::vector<std::string>& columns,
                       const std::string& response_column) {
    const int n = static_cast<int>(rows.rows());
    const int n_cols = static_cast<int>(rows.cols());
    if (static_cast<int>(columns.size()) != n_cols) {
        throw Error(errc::dimension_mismatch, "column-name count does not match data width");
    }
    int response_idx = -1;
    for (int j = 0; j < n_cols; ++j) {
        if (columns[j] == response_column) {
            response_idx = j;
            break;
        }
    }
    if (response_idx < 0) {
        throw Error(errc::response_column_not_found, "'" + response_column + "'");
    }
    if (!rows.allFinite()) {
        throw Error(errc::missing_values, "dataset contains NaN or infinite entries");
    }
    const int p = n_cols - 1;
    if (p < 2) {
        throw Error(errc::not_square, "need at least 2 predictors, got " + std::to_string(p));
    }
    if (n <= n_cols) {
        throw Error(errc::rank_deficient,
                    "need more observations than variables (n = " + std::to_string(n) + ")");
    }

    // Center and scale every column to unit norm; correlations are then
    // plain inner products.
    Matrix std_cols(n, n_cols);
    for (int j = 0; j < n_cols; ++j) {
        Vector col = rows.col(j);
        col.array() -= col.mean();
        const double norm = col.norm();
        if (norm <= 1e-12) {
            throw Error(errc::rank_deficient, "column '" + columns[j] + "' is constant");
        }
        std_cols.col(j) = col / norm;
    }

    Matrix sigma_xx(p, p);
    Vector rho_xy(p);
    std::vector<std::string> names;
    names.reserve(p);
    int a = 0;
    for (int j = 0; j < n_cols; ++j) {
        if (j == response_idx) continue;
        names.push_back(columns[j]);
        rho_xy(a) = std_cols.col(j).dot(std_cols.col(response_idx));
        int b = 0;
        for (int k = 0; k < n_cols; ++k) {
            if (k == response_idx) continue;
            sigma_xx(a, b) = std_cols.col(j).dot(std_cols.col(k));
            ++b;
        }
        ++a;
    }

    try {
        CorrelationMatrix corr = validate_correlation(sigma_xx);
        return Dataset{make_augmented(std::move(corr), std::move(rho_xy)), std::move(names)};
    } catch (const Error& e) {
        if (e.code() == errc::not_positive_definite) {
            throw Error(errc::rank_deficient, "predictor columns are linearly dependent");
        }
        throw;
    }
}

} // namespace relimp
