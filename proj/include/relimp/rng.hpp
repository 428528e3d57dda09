#pragma once

#include <cstdint>
#include <string_view>

namespace relimp {

/// Deterministic splittable random stream.
///
/// A stream is identified by a 64-bit fingerprint folded from the master
/// seed and the ordered derivation path of (role, index) pairs. Equal
/// (seed, path) pairs replay the same sequence; distinct paths yield
/// statistically independent sequences, so nested simulation loops can be
/// parallelized while staying bit-identical to serial execution.
class RngStream {
public:
    explicit RngStream(std::uint64_t master_seed);

    /// Child stream for (role, index). Leaves this stream untouched.
    RngStream derive(std::string_view role, std::uint64_t index) const;

    std::uint64_t next_u64();

    /// Uniform draw strictly inside (0, 1), 53-bit resolution.
    double uniform01();

    /// Standard normal via Box-Muller on uniform01 draws.
    double normal();

private:
    explicit RngStream(std::uint64_t fingerprint, int /*tag*/);

    std::uint64_t fingerprint_;
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace relimp
