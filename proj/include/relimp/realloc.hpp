#pragma once

#include <map>
#include <string>

#include "relimp/corrmat.hpp"
#include "relimp/ortho.hpp"
#include "relimp/types.hpp"

namespace relimp {

/// Tags the shares and clamps floating-point noise: entries in
/// [-1e-12, 0) become 0.
ReallocationMatrix make_reallocation(Matrix values, ReallocMethod method, OrthMethod orth_method);

/// Identity reallocation: each z~_i keeps its importance at x_i.
ReallocationMatrix ida(int p, OrthMethod orth_method = OrthMethod::johnson);

/// Regression-based proportional reallocation: a_ij = gamma_ij^2
/// normalized per column. For Johnson's Z the normalizer equals VIF_j.
ReallocationMatrix regpa(const Orthogonalization& orth);

/// Correlation-based proportional reallocation: a_ij = l_ij^2 normalized
/// per column (always the explicit normalization, even for Johnson's Z
/// where the column sums are already 1).
ReallocationMatrix corpa(const Orthogonalization& orth);

/// D_i = sum_j a_ij * rho_{z~_j y}^2. Efficiency: sum_i D_i = R^2.
ImportanceVector evaluate_orm(const ReallocationMatrix& realloc, const Vector& rho_zy);

/// The named measures from the literature, all under Johnson's Z:
/// GD (exact dominance), RW = CorPA, GCD = RegPA, CAR = IdA, and the
/// GDA benchmark ORM.
std::map<std::string, ImportanceVector> named_measures(const AugmentedProblem& problem);

} // namespace relimp
