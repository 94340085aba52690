#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace monoamp {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seedable, splittable generator used by every randomized operation.
///
/// Wraps a 64-bit Mersenne twister. `stream(seed, i)` derives the i-th
/// independent stream of a seed, so trials can run in any order (or in
/// parallel) and still reproduce bit-for-bit.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    static Rng stream(std::uint64_t seed, std::uint64_t index)
    {
        return Rng(splitmix64(seed ^ splitmix64(index + 0x5851f42d4c957f2dULL)));
    }

    // Child generator seeded from this one's next output.
    Rng split() { return Rng(splitmix64(engine_())); }

    std::uint64_t seed() const noexcept { return seed_; }

    static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // 1 with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n)
    {
        std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
        return dist(engine_);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace monoamp
