#pragma once

#include <vector>

#include "relimp/corrmat.hpp"
#include "relimp/ortho.hpp"
#include "relimp/types.hpp"

namespace relimp {

/// Hard cap on exact subset enumeration (2^p sub-models).
inline constexpr int kMaxPredictors = 20;
/// Above this, callers should warn about runtime before proceeding.
inline constexpr int kSoftPredictorCap = 15;

/// Exact sub-model R^2 engine over all 2^p predictor subsets.
///
/// Subsets are bitmask-indexed (bit i = predictor i present). For small p
/// the Cholesky factor of every Sigma_S is cached at construction so that
/// repeated targets (the p GD coordinates, the p GDA targets per
/// orthogonalization, and every simulated response) cost one triangular
/// solve per subset.
class SubsetEngine {
public:
    explicit SubsetEngine(const CorrelationMatrix& corr);

    int p() const { return p_; }
    std::size_t n_subsets() const { return std::size_t(1) << p_; }

    /// R^2 of every subset for one target correlation vector; entry [mask]
    /// is R^2_{target . X_S} with S the set bits of mask.
    std::vector<double> r_squared_table(const Vector& target) const;

    /// Shared-factorization variant: each Sigma_S is factored once and
    /// reused across all target columns.
    std::vector<std::vector<double>> r_squared_tables(const Matrix& targets) const;

    /// General dominance from a full subset R^2 table: the Eq.-3 weighted
    /// average of increments over all sub-models.
    static Vector dominance_from_table(const std::vector<double>& table, int p);

private:
    template <typename PerSubset>
    void for_each_subset(PerSubset&& fn) const;

    Matrix values_;
    int p_ = 0;
    std::vector<Eigen::LLT<Matrix>> cached_factors_;  // mask-indexed, small p only
};

/// GD(x_i): average incremental R^2 of x_i over all sub-models (Shapley
/// value of the R^2 game). Throws TooManyPredictors above the hard cap.
ImportanceVector general_dominance(const AugmentedProblem& problem);

/// GDA: a_ij = GD of x_i in predicting z~_j, with targets the loading
/// columns. Columns sum to 1 because every z~_j lies in the span of X.
ReallocationMatrix gda_reallocation(const Orthogonalization& orth, const CorrelationMatrix& corr);
ReallocationMatrix gda_reallocation(const Orthogonalization& orth, const SubsetEngine& engine);

} // namespace relimp
