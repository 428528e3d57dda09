#pragma once

#include <stdexcept>
#include <string>

namespace relimp {

enum class errc {
    not_square,
    diagonal_not_unit,
    not_positive_definite,
    off_diagonal_out_of_range,
    cholesky_failure,
    too_many_predictors,
    dimension_mismatch,
    index_out_of_range,
    rank_deficient,
    missing_values,
    response_column_not_found,
    degenerate_column,
    no_convergence,
    sampler_stuck,
    invalid_r2,
    invalid_config,
    empty_group,
    unpaired_group,
    schema_mismatch,
    io_failure,
};

const char* errc_name(errc code);

/// Runtime error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

} // namespace relimp
