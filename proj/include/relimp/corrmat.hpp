#pragma once

#include <string>
#include <vector>

#include "relimp/error.hpp"
#include "relimp/types.hpp"

namespace relimp {

/// Smallest eigenvalue accepted as positive definite.
inline constexpr double kEigenvalueFloor = 1e-10;

/// Validated p x p predictor correlation matrix with cached spectral
/// decomposition. Eigenvalues are sorted descending; each eigenvector
/// column is sign-fixed so its largest-magnitude entry is positive.
/// Immutable after construction.
class CorrelationMatrix {
public:
    int p() const { return static_cast<int>(values_.rows()); }
    const Matrix& values() const { return values_; }
    const Vector& lambdas() const { return lambdas_; }
    const Matrix& eigvecs() const { return eigvecs_; }

    /// Sigma_xx^{-1} * rhs via the cached spectrum.
    Vector solve(const Vector& rhs) const;

private:
    friend CorrelationMatrix validate_correlation(const Matrix&, double);
    CorrelationMatrix() = default;

    Matrix values_;
    Vector lambdas_;
    Matrix eigvecs_;
};

/// Validates a candidate correlation matrix and caches its spectrum.
/// Symmetry is enforced by averaging with the transpose before the
/// decomposition; everything else is rejected rather than repaired.
/// Throws Error with NotSquare, DiagonalNotUnit, OffDiagonalOutOfRange,
/// or NotPositiveDefinite.
CorrelationMatrix validate_correlation(const Matrix& m, double diag_tolerance = 1e-10);

/// Predictor correlations plus the response side: rho_xy and the implied
/// R^2 = rho_xy' Sigma_xx^{-1} rho_xy.
class AugmentedProblem {
public:
    const CorrelationMatrix& corr() const { return corr_; }
    const Vector& rho_xy() const { return rho_xy_; }
    double r_squared() const { return r_squared_; }
    int p() const { return corr_.p(); }

private:
    friend AugmentedProblem make_augmented(CorrelationMatrix, Vector);
    AugmentedProblem(CorrelationMatrix corr, Vector rho_xy, double r2)
        : corr_(std::move(corr)), rho_xy_(std::move(rho_xy)), r_squared_(r2) {}

    CorrelationMatrix corr_;
    Vector rho_xy_;
    double r_squared_;
};

/// Builds an AugmentedProblem, checking that the bordered (p+1)x(p+1)
/// matrix stays positive semi-definite (R^2 <= 1).
AugmentedProblem make_augmented(CorrelationMatrix corr, Vector rho_xy);

/// Variance inflation factors: diagonal of Sigma_xx^{-1}. Every entry >= 1.
Vector vif(const CorrelationMatrix& corr);

/// R^2 of the sub-model using the 0-based predictor indices in `subset`.
/// Empty subset yields 0. Monotone nondecreasing under inclusion.
double subset_r_squared(const AugmentedProblem& problem, const std::vector<int>& subset);

/// Table-2 classification from lambda1/sqrt(p) and VIF_max/p; strict <
/// on the mild side, >= on the severe/strong side.
Scenario classify_scenario(const CorrelationMatrix& corr);

struct Dataset {
    AugmentedProblem problem;
    std::vector<std::string> predictor_names;
};

/// Standardizes every column to zero mean and unit norm, forms the
/// augmented correlation matrix by inner products, and validates the
/// predictor block. Throws RankDeficient, MissingValues, or
/// ResponseColumnNotFound.
Dataset ingest_dataset(const Matrix& rows, const std::vector<std::string>& columns,
                       const std::string& response_column);

} // namespace relimp
