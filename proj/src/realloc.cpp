#include "relimp/realloc.hpp"

#include <cmath>

#include "relimp/dominance.hpp"

namespace relimp {

ReallocationMatrix make_reallocation(Matrix values, ReallocMethod method, OrthMethod orth_method) {
    for (int j = 0; j < values.cols(); ++j) {
        for (int i = 0; i < values.rows(); ++i) {
            if (values(i, j) < 0.0 && values(i, j) >= -1e-12) values(i, j) = 0.0;
        }
    }
    return ReallocationMatrix{std::move(values), method, orth_method};
}

ReallocationMatrix ida(int p, OrthMethod orth_method) {
    if (p < 2) throw Error(errc::not_square, "need at least 2 predictors");
    return make_reallocation(Matrix::Identity(p, p), ReallocMethod::ida, orth_method);
}

namespace {

ReallocationMatrix column_normalized_squares(const Matrix& coefficients, ReallocMethod method,
                                             OrthMethod orth_method) {
    const Matrix squared = coefficients.array().square();
    Matrix shares(squared.rows(), squared.cols());
    for (int j = 0; j < squared.cols(); ++j) {
        const double column_sum = squared.col(j).sum();
        if (column_sum < 1e-14) {
            throw Error(errc::degenerate_column,
                        "column " + std::to_string(j) + " has vanishing sum of squares");
        }
        shares.col(j) = squared.col(j) / column_sum;
    }
    return make_reallocation(std::move(shares), method, orth_method);
}

} // namespace

ReallocationMatrix regpa(const Orthogonalization& orth) {
    return column_normalized_squares(orth.gamma, ReallocMethod::regpa, orth.method);
}

ReallocationMatrix corpa(const Orthogonalization& orth) {
    return column_normalized_squares(orth.loading, ReallocMethod::corpa, orth.method);
}

ImportanceVector evaluate_orm(const ReallocationMatrix& realloc, const Vector& rho_zy) {
    if (realloc.values.cols() != rho_zy.size()) {
        throw Error(errc::dimension_mismatch, "reallocation is " + std::to_string(realloc.values.rows()) +
                                                  "x" + std::to_string(realloc.values.cols()) +
                                                  ", rho_zy has length " + std::to_string(rho_zy.size()));
    }
    const Vector contributions = rho_zy.array().square();
    return ImportanceVector{realloc.values * contributions,
                            std::string(display_name(realloc.method)) + "/" +
                                display_name(realloc.orth_method)};
}

std::map<std::string, ImportanceVector> named_measures(const AugmentedProblem& problem) {
    std::map<std::string, ImportanceVector> out;
    out.emplace("GD", general_dominance(problem));

    const Orthogonalization z = johnson(problem.corr());
    const Vector rho_zy = orthogonal_response_correlations(z, problem);

    auto add = [&](const std::string& name, const ReallocationMatrix& a) {
        ImportanceVector v = evaluate_orm(a, rho_zy);
        v.measure = name;
        out.emplace(name, std::move(v));
    };
    add("RW", corpa(z));
    add("GCD", regpa(z));
    add("CAR", ida(problem.p()));
    add("GDA_ORM", gda_reallocation(z, problem.corr()));
    return out;
}

} // namespace relimp
