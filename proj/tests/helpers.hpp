#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "relimp/corrmat.hpp"
#include "relimp/rng.hpp"
#include "relimp/simgen.hpp"

namespace testutil {

using relimp::Matrix;
using relimp::Vector;

// Equicorrelation matrix: unit diagonal, constant off-diagonal rho.
inline Matrix equicorrelation(int p, double rho) {
    Matrix m = Matrix::Constant(p, p, rho);
    m.diagonal().setOnes();
    return m;
}

// Random valid correlation matrix via the simplex/alternating-projection
// generators, resampling until the spectrum is comfortably conditioned so
// tight-tolerance comparisons stay meaningful.
inline relimp::CorrelationMatrix random_correlation(int p, relimp::RngStream stream,
                                                    double lambda_min_floor = 1e-3) {
    for (int attempt = 0;; ++attempt) {
        const auto spectrum = relimp::sample_simplex(p, stream.derive("spec", attempt));
        if (spectrum.lambdas(p - 1) < lambda_min_floor) continue;
        return relimp::map_correlation(spectrum, 0, stream.derive("mat", attempt));
    }
}

// Random response correlations with R^2 drawn in (0.05, 0.95).
inline Vector random_rho_xy(const relimp::CorrelationMatrix& corr, relimp::RngStream stream) {
    const int p = corr.p();
    Vector u(p);
    for (int i = 0; i < p; ++i) u(i) = stream.normal();
    u.normalize();
    const double r2 = 0.05 + 0.9 * stream.uniform01();
    const Matrix loading =
        corr.eigvecs() * corr.lambdas().cwiseSqrt().asDiagonal() * corr.eigvecs().transpose();
    return loading * (std::sqrt(r2) * u);
}

// ---------------------------------------------------------------------------
// Independent oracles. These deliberately avoid the library's engines: plain
// Eigen solves on explicitly built submatrices, permutation averages, and
// exhaustive enumeration.
// ---------------------------------------------------------------------------

// Sub-model R^2 by a fresh fully pivoted solve.
inline double oracle_subset_r2(const Matrix& sigma, const Vector& rho, const std::vector<int>& subset) {
    if (subset.empty()) return 0.0;
    const int k = static_cast<int>(subset.size());
    Matrix block(k, k);
    Vector r(k);
    for (int a = 0; a < k; ++a) {
        r(a) = rho(subset[a]);
        for (int b = 0; b < k; ++b) block(a, b) = sigma(subset[a], subset[b]);
    }
    return r.dot(block.fullPivLu().solve(r));
}

// Shapley value as the average over all p! orderings of sequential R^2
// increments.
inline Vector oracle_permutation_gd(const Matrix& sigma, const Vector& rho) {
    const int p = static_cast<int>(sigma.rows());
    std::vector<int> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    Vector total = Vector::Zero(p);
    long n_perms = 0;
    do {
        std::vector<int> prefix;
        double previous = 0.0;
        for (int idx : perm) {
            prefix.push_back(idx);
            const double current = oracle_subset_r2(sigma, rho, prefix);
            total(idx) += current - previous;
            previous = current;
        }
        ++n_perms;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / static_cast<double>(n_perms);
}

// Kendall tau-b from explicit pair counts.
inline double oracle_kendall_tau(const Vector& x, const Vector& y) {
    const int n = static_cast<int>(x.size());
    double concordant = 0, discordant = 0, tx = 0, ty = 0;
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            const double dx = x(i) - x(j);
            const double dy = y(i) - y(j);
            if (dx == 0 && dy == 0) continue;
            if (dx == 0) {
                tx += 1;
            } else if (dy == 0) {
                ty += 1;
            } else if (dx * dy > 0) {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    return (concordant - discordant) /
           std::sqrt((concordant + discordant + tx) * (concordant + discordant + ty));
}

// Exact two-sided Wilcoxon p-value by enumerating all 2^n sign assignments
// of the observed midranks.
inline double oracle_wilcoxon_p(const std::vector<double>& diffs) {
    std::vector<double> magnitudes;
    for (double d : diffs) {
        if (d != 0.0) magnitudes.push_back(std::abs(d));
    }
    const int n = static_cast<int>(magnitudes.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return magnitudes[a] < magnitudes[b]; });
    std::vector<double> rank(n);
    for (int start = 0; start < n;) {
        int stop = start + 1;
        while (stop < n && magnitudes[order[stop]] == magnitudes[order[start]]) ++stop;
        const double mid = 0.5 * (start + stop - 1) + 1.0;
        for (int k = start; k < stop; ++k) rank[order[k]] = mid;
        start = stop;
    }
    double observed = 0.0;
    int pos = 0;
    for (double d : diffs) {
        if (d > 0.0) observed += rank[pos];
        if (d != 0.0) ++pos;
    }
    long below = 0, above = 0;
    const long total = 1L << n;
    for (long mask = 0; mask < total; ++mask) {
        double w = 0.0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1L << i)) w += rank[i];
        }
        if (w <= observed + 1e-12) ++below;
        if (w >= observed - 1e-12) ++above;
    }
    return std::min(1.0, 2.0 * static_cast<double>(std::min(below, above)) / total);
}

} // namespace testutil
