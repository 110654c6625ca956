#pragma once

#include <cstdint>

namespace hyperwalk::rng {

// splitmix64 finalizer (Steele, Lea & Flood); full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// splitmix64 stream. Streams are keyed by (seed, trial, step), which makes
// trials reproducible and order-independent: no generator state is shared
// across trials or steps.
class Stream {
  public:
    explicit Stream(std::uint64_t state) : state_(state) {}

    static Stream keyed(std::uint64_t seed, std::uint64_t trial, std::uint64_t step) {
        std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ULL);
        h = mix64(h ^ (trial + 0xD1B54A32D192ED03ULL));
        h = mix64(h ^ (step + 0x8CB92BA72F3D8DD7ULL));
        return Stream(h);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // true with probability p for the threshold below
    bool bernoulli(std::uint64_t threshold) { return next_u64() < threshold; }

    // Exact to 2^-64 for p in [0, 1). Callers special-case p >= 1.
    static std::uint64_t threshold_for(double p) {
        if (p <= 0.0) return 0;
        return static_cast<std::uint64_t>(p * 18446744073709551616.0L);
    }

  private:
    std::uint64_t state_;
};

}  // namespace hyperwalk::rng
