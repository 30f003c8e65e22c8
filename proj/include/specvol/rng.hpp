#pragma once

#include <cstdint>

namespace specvol {

// Counter-based pseudo-random stream (splitmix64). Each (seed, stock, day)
// triple gets an independent stream, so stock-days can be generated on any
// thread in any order and still produce identical draws.
class CounterRng {
public:
    static CounterRng for_stock_day(std::uint64_t seed, std::uint32_t stock,
                                    std::uint32_t day) {
        std::uint64_t key = mix(seed ^ 0x9e3779b97f4a7c15ull);
        key = mix(key + stock);
        key = mix(key + (static_cast<std::uint64_t>(day) << 32));
        return CounterRng(key);
    }

    explicit CounterRng(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform in (0, 1]; never returns 0, safe under log().
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (second variate discarded: a fixed
    // two-draw cost keeps streams independent of caller history).
    double normal();

    // Exponential with the given rate.
    double exponential(double rate);

    // Uniform integer in [lo, hi].
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() %
                                           static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

} // namespace specvol
