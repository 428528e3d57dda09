#pragma once

#include "relimp/corrmat.hpp"
#include "relimp/types.hpp"

namespace relimp {

/// One orthogonalization of the predictors, represented canonically as a
/// rotation of Johnson's Z: Z~ = Z*Q. `loading` holds the correlations
/// between X and Z~ (L_Z~ = Sigma_xz * Q) and `gamma` the regression
/// coefficients of Z~ on X (Gamma_Z~ = Gamma_Z * Q).
struct Orthogonalization {
    OrthMethod method;
    Matrix rotation_q;
    Matrix loading;
    Matrix gamma;
    bool converged = true;  // false only when varimax hits its sweep cap
};

/// Johnson's minimal transformation: Q = I, loading = V S V', gamma = V S^{-1} V'.
Orthogonalization johnson(const CorrelationMatrix& corr);

/// Gram-Schmidt in natural column order, via the Cholesky factor of
/// Sigma_xx = R'R: loading = R' (lower triangular, positive diagonal).
Orthogonalization gram_schmidt(const CorrelationMatrix& corr);

/// Standardized principal components: Q = V, loading = V*diag(sqrt(lambda)).
Orthogonalization principal_components(const CorrelationMatrix& corr);

/// Varimax rotation of the Johnson loading: iterative pairwise planar
/// rotations maximizing the raw varimax objective, no row normalization.
/// Converged when the objective gain of a full sweep drops below `tol`;
/// when `max_iter` sweeps are exhausted the best-so-far rotation is
/// returned with converged = false.
Orthogonalization varimax(const CorrelationMatrix& corr, double tol = 1e-10, int max_iter = 1000);

Orthogonalization make_orthogonalization(OrthMethod method, const CorrelationMatrix& corr);

/// Raw varimax objective: per-column variance of squared loadings.
double varimax_objective(const Matrix& loading);

/// Canonical form for rotation comparisons: columns permuted and
/// sign-flipped to maximize the loading trace with nonnegative diagonal.
Orthogonalization canonicalized(const Orthogonalization& orth);

/// Correlations of the orthogonalized predictors with the response:
/// rho_z~y = Q' * Gamma_Z * rho_xy. Squared entries sum to R^2.
Vector orthogonal_response_correlations(const Orthogonalization& orth, const AugmentedProblem& problem);

} // namespace relimp
