#ifndef FLOODSIM_RNG_HPP
#define FLOODSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace floodsim {

// Golden-ratio increment used by every seed derivation in the project.
inline constexpr std::uint64_t kSeedMixConstant = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += kSeedMixConstant;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for the stream identified by (master, tags...). Distinct tag tuples give
// unrelated streams, so new streams never perturb existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a) {
    return mix64(mix64(master) ^ a);
}
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return mix64(derive_seed(master, a) ^ b);
}
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c) {
    return mix64(derive_seed(master, a, b) ^ c);
}

// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) with
// draw routines that do not depend on the standard library's distribution
// implementations, so streams are identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). Lemire's multiply-and-reject method.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform integer in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-unit()) / rate; }

private:
    std::mt19937_64 engine_;
};

}  // namespace floodsim

#endif  // FLOODSIM_RNG_HPP
