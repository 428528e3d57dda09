#include "relimp/rng.hpp"

#include <cmath>

namespace relimp {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 6.28318530717958647692;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// FNV-1a over the role tag.
std::uint64_t hash_role(std::string_view role) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : role) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed)
    : fingerprint_(mix64(master_seed + kGolden)), state_(fingerprint_) {}

RngStream::RngStream(std::uint64_t fingerprint, int) : fingerprint_(fingerprint), state_(fingerprint) {}

RngStream RngStream::derive(std::string_view role, std::uint64_t index) const {
    std::uint64_t f = fingerprint_;
    f = mix64(f ^ hash_role(role));
    f = mix64(f ^ (index + kGolden));
    return RngStream(f, 0);
}

std::uint64_t RngStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double RngStream::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

} // namespace relimp
