#include "relimp/error.hpp"

namespace relimp {

const char* errc_name(errc code) {
    switch (code) {
        case errc::not_square: return "NotSquare";
        case errc::diagonal_not_unit: return "DiagonalNotUnit";
        case errc::not_positive_definite: return "NotPositiveDefinite";
        case errc::off_diagonal_out_of_range: return "OffDiagonalOutOfRange";
        case errc::cholesky_failure: return "CholeskyFailure";
        case errc::too_many_predictors: return "TooManyPredictors";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::rank_deficient: return "RankDeficient";
        case errc::missing_values: return "MissingValues";
        case errc::response_column_not_found: return "ResponseColumnNotFound";
        case errc::degenerate_column: return "DegenerateColumn";
        case errc::no_convergence: return "NoConvergence";
        case errc::sampler_stuck: return "SamplerStuck";
        case errc::invalid_r2: return "InvalidR2";
        case errc::invalid_config: return "InvalidConfig";
        case errc::empty_group: return "EmptyGroup";
        case errc::unpaired_group: return "UnpairedGroup";
        case errc::schema_mismatch: return "SchemaMismatch";
        case errc::io_failure: return "IoFailure";
    }
    return "UnknownError";
}

} // namespace relimp
