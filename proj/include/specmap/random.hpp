#pragma once

#include <cstdint>
#include <random>

namespace specmap {

/// Mixes a (parent, stream) pair into an independent 64-bit seed with the
/// SplitMix64 finalizer. Used to split one master seed into per-scene and
/// per-purpose streams.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

/// Seeded generator with distribution helpers whose output depends only on
/// the engine bits, so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi] (inclusive), unbiased via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform real in [lo, hi).
    double uniform_real(double lo, double hi);

    /// Standard normal draw (Box-Muller, one value per call).
    double normal();

private:
    std::mt19937_64 engine_;
};

} // namespace specmap
