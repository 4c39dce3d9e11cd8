#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace scnplan {

// Deterministic RNG used everywhere randomness is needed. All draws go
// through explicit arithmetic (no std distributions) so that a seed produces
// the same stream on every platform and standard library.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), gen_(seed) {}

    // Named independent stream derived from this seed. Components draw from
    // their own stream so they can be re-run in isolation.
    Rng substream(std::string_view name) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return Rng(mix(seed_ ^ h));
    }

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(next_u64() % static_cast<uint64_t>(n));
    }

    // Standard normal via Box-Muller; one value per call, spare discarded,
    // keeping the consumed-draw count independent of call pattern.
    double gaussian() {
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    uint64_t seed() const { return seed_; }

private:
    static uint64_t mix(uint64_t x) {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace scnplan
