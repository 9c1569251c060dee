#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Deterministic random source. The engine is std::mt19937_64 but every
// distribution transform is implemented here explicitly, so identical seeds
// give identical streams on any platform and compiler.

namespace banditlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Fixed mixing function for deriving independent sub-streams from a master
// seed, e.g. disjoint training / evaluation / holdout streams per experiment
// cell. Documented contract: mix_seed(base, stream, tag) =
// splitmix64(splitmix64(base ^ splitmix64(stream)) ^ tag).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream,
                              std::uint64_t tag) {
    return splitmix64(splitmix64(base ^ splitmix64(stream)) ^ tag);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // standard normal via Box-Muller (both uniforms consumed per draw)
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        // u1 == 0 would take log(0); the smallest representable draw is fine
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // geometric count of failures before success, support {0, 1, ...}
    std::int64_t geometric(double p) {
        if (p >= 1.0) return 0;
        double u = uniform();
        return static_cast<std::int64_t>(std::floor(std::log1p(-u) / std::log1p(-p)));
    }

    // session length with mean `mean`, support {1, 2, ...}
    std::int64_t session_length(double mean) {
        return 1 + geometric(1.0 / mean);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace banditlab
