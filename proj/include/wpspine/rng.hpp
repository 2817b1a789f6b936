#pragma once

#include <cmath>
#include <cstdint>

namespace wpspine {

/// Counter-based splittable generator: the stream for (seed, stream) is a
/// pure function of the pair, and draws are a pure function of the counter.
/// Splitting by sample index therefore reproduces bit-identical results
/// under any parallel schedule.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

    /// Uniform on the open interval (0, 1).
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_exp() { return -std::log(next_unit()); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace wpspine
