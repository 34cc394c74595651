#pragma once

#include <cstdint>
#include <string_view>

namespace harmatte {

/// Deterministic 64-bit generator (splitmix64). Draw helpers avoid the
/// standard distributions on purpose: their output differs across standard
/// library implementations, and every byte of pipeline output must be
/// reproducible from (seed, image_id) alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Uniform in [0, 1) with 53 random bits.
    double next_double();

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t next_below(std::uint64_t n);

    /// Uniform real in [lo, hi).
    double next_real(double lo, double hi);

private:
    std::uint64_t state_;
};

/// FNV-1a hash of a byte string.
std::uint64_t fnv1a64(std::string_view s);

/// splitmix64 finalizer, used to decorrelate seed material.
std::uint64_t mix64(std::uint64_t z);

/// Stream tags keep draws for unrelated purposes independent.
inline constexpr std::uint64_t kStreamAdjustment = 0;
inline constexpr std::uint64_t kStreamBackground = 1;
inline constexpr std::uint64_t kStreamSplit = 2;

/// Seed value for the per-item stream keyed by (seed, id, tag). Independent of
/// processing order, so parallel runs are byte-identical.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view id, std::uint64_t tag);

/// Per-item generator ready to draw from.
SplitMix64 per_item_stream(std::uint64_t seed, std::string_view id, std::uint64_t tag);

}  // namespace harmatte
