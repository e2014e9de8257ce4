#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fundopt {

/// Seeded random stream with platform-stable variate mappings.
///
/// std::mt19937_64 emits the same bit sequence on every platform, but the
/// standard <random> distributions do not. The draw functions below pin the
/// bits-to-variate mapping so a seeded run replays identically everywhere.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Standard normal via Box-Muller. One variate per call so the stream
    /// position never depends on call history.
    double normal();

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Derives an independent child seed from a master seed and a phase tag.
/// Used to split one run seed into per-phase streams (init / ga / ...).
std::uint64_t split_seed(std::uint64_t master, std::string_view tag);

} // namespace fundopt
