#pragma once

#include <cstdint>

namespace mfspin {

// Counter-based splittable stream: output i of stream (seed, chunk) is
// mix(base + i*gamma), so chunks can be generated in any schedule with
// identical results.
class SplitMixStream {
public:
    SplitMixStream(std::uint64_t seed, std::uint64_t chunk) {
        state_ = mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ mix(chunk * 0xbf58476d1ce4e5b9ULL + 1);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // uniform in (0, 1); never returns 0 so logs stay finite
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // uniform integer in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        // rejection keeps the draw exactly uniform
        std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t state_;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }
};

}  // namespace mfspin
