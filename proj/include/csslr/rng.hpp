#pragma once

#include <cstdint>
#include <random>

namespace csslr {

// splitmix64; used only to whiten (seed, stream) pairs into engine seeds.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// Independent reproducible stream for (seed, stream_index). The mapping is
// fixed: mt19937_64 seeded with splitmix64 applied twice to a mix of seed
// and stream index. Streams with different indices never share a seed path.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mix{seed ^ (0xD1B54A32D192ED03ULL * (stream + 1))};
    std::uint64_t s = mix.next();
    (void)mix.next();
    s ^= mix.next();
    return std::mt19937_64{s};
}

// Standard normal variates via Box-Muller. std::normal_distribution is not
// bit-stable across standard library implementations; this is.
class NormalSampler {
public:
    explicit NormalSampler(std::mt19937_64 engine) : engine_(engine) {}

    // uniform in (0, 1), 53-bit resolution, zero excluded
    double uniform() {
        for (;;) {
            double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace csslr
