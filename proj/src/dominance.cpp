#include "relimp/dominance.hpp"

#include <bit>
#include <cmath>

#include "relimp/realloc.hpp"

namespace relimp {

namespace {

// Cache Cholesky factors of every subset block up to this p (memory grows
// as 2^p * p^2; 14 keeps it under ~30 MB).
constexpr int kFactorCacheCap = 14;

std::vector<int> subset_indices(std::size_t mask, int p) {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (int i = 0; i < p; ++i) {
        if (mask & (std::size_t(1) << i)) idx.push_back(i);
    }
    return idx;
}

Eigen::LLT<Matrix> factor_subset(const Matrix& values, const std::vector<int>& idx) {
    const int k = static_cast<int>(idx.size());
    Matrix block(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) block(a, b) = values(idx[a], idx[b]);
    }
    Eigen::LLT<Matrix> llt(block);
    if (llt.info() != Eigen::Success) {
        throw Error(errc::cholesky_failure, "subset block is not positive definite");
    }
    return llt;
}

} // namespace

SubsetEngine::SubsetEngine(const CorrelationMatrix& corr) : values_(corr.values()), p_(corr.p()) {
    if (p_ > kMaxPredictors) {
        throw Error(errc::too_many_predictors,
                    "p = " + std::to_string(p_) + " exceeds the exact-enumeration cap of " +
                        std::to_string(kMaxPredictors));
    }
    if (p_ <= kFactorCacheCap) {
        cached_factors_.resize(n_subsets());
        for (std::size_t mask = 1; mask < n_subsets(); ++mask) {
            cached_factors_[mask] = factor_subset(values_, subset_indices(mask, p_));
        }
    }
}

template <typename PerSubset>
void SubsetEngine::for_each_subset(PerSubset&& fn) const {
    for (std::size_t mask = 1; mask < n_subsets(); ++mask) {
        const std::vector<int> idx = subset_indices(mask, p_);
        if (!cached_factors_.empty()) {
            fn(mask, idx, cached_factors_[mask]);
        } else {
            fn(mask, idx, factor_subset(values_, idx));
        }
    }
}

std::vector<double> SubsetEngine::r_squared_table(const Vector& target) const {
    if (target.size() != p_) {
        throw Error(errc::dimension_mismatch, "target length " + std::to_string(target.size()));
    }
    std::vector<double> table(n_subsets(), 0.0);
    for_each_subset([&](std::size_t mask, const std::vector<int>& idx, const Eigen::LLT<Matrix>& llt) {
        const int k = static_cast<int>(idx.size());
        Vector rho(k);
        for (int a = 0; a < k; ++a) rho(a) = target(idx[a]);
        table[mask] = rho.dot(llt.solve(rho));
    });
    return table;
}

std::vector<std::vector<double>> SubsetEngine::r_squared_tables(const Matrix& targets) const {
    if (targets.rows() != p_) {
        throw Error(errc::dimension_mismatch, "targets have " + std::to_string(targets.rows()) + " rows");
    }
    const int m = static_cast<int>(targets.cols());
    std::vector<std::vector<double>> tables(m, std::vector<double>(n_subsets(), 0.0));
    for_each_subset([&](std::size_t mask, const std::vector<int>& idx, const Eigen::LLT<Matrix>& llt) {
        const int k = static_cast<int>(idx.size());
        Vector rho(k);
        for (int t = 0; t < m; ++t) {
            for (int a = 0; a < k; ++a) rho(a) = targets(idx[a], t);
            tables[t][mask] = rho.dot(llt.solve(rho));
        }
    });
    return tables;
}

Vector SubsetEngine::dominance_from_table(const std::vector<double>& table, int p) {
    // weight(|S|) = 1 / (p * C(p-1, |S|)) from the precomputed Pascal row.
    std::vector<double> choose(p, 1.0);
    for (int s = 1; s < p; ++s) choose[s] = choose[s - 1] * (p - s) / s;
    std::vector<double> weight(p);
    for (int s = 0; s < p; ++s) weight[s] = 1.0 / (p * choose[s]);

    Vector gd = Vector::Zero(p);
    const std::size_t n = std::size_t(1) << p;
    for (int i = 0; i < p; ++i) {
        const std::size_t bit = std::size_t(1) << i;
        double acc = 0.0;
        for (std::size_t mask = 0; mask < n; ++mask) {
            if (mask & bit) continue;
            acc += weight[std::popcount(mask)] * (table[mask | bit] - table[mask]);
        }
        gd(i) = acc;
    }
    return gd;
}

ImportanceVector general_dominance(const AugmentedProblem& problem) {
    SubsetEngine engine(problem.corr());
    return ImportanceVector{
        SubsetEngine::dominance_from_table(engine.r_squared_table(problem.rho_xy()), problem.p()), "GD"};
}

ReallocationMatrix gda_reallocation(const Orthogonalization& orth, const SubsetEngine& engine) {
    const int p = engine.p();
    if (orth.loading.rows() != p) {
        throw Error(errc::dimension_mismatch, "orthogonalization/engine dimension mismatch");
    }
    const auto tables = engine.r_squared_tables(orth.loading);
    Matrix shares(p, p);
    for (int j = 0; j < p; ++j) {
        shares.col(j) = SubsetEngine::dominance_from_table(tables[j], p);
    }
    return make_reallocation(std::move(shares), ReallocMethod::gda, orth.method);
}

ReallocationMatrix gda_reallocation(const Orthogonalization& orth, const CorrelationMatrix& corr) {
    return gda_reallocation(orth, SubsetEngine(corr));
}

} // namespace relimp
