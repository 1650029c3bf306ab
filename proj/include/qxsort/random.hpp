#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace qxsort {

// Anything that can draw a uniform integer in [0, n) for n >= 1.
template <class R>
concept UniformSource = requires(R& r, std::uint64_t n) {
    { r.below(n) } -> std::convertible_to<std::uint64_t>;
};

// SplitMix64 finalizer. Used to derive per-trial seeds from a base seed.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded source. The bounded draw is done here rather than through
// std::uniform_int_distribution so results agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        // Lemire's multiply-shift with rejection.
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Always answers 0. On a uniformly random input this is distributed like
// a fresh random source, since sampling never looks at values.
struct FirstChoice {
    std::uint64_t below(std::uint64_t) { return 0; }
};

}  // namespace qxsort
