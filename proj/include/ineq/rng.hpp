#pragma once

#include <cstdint>
#include <random>

namespace ineq {

// Deterministic RNG wrapper. All sampling goes through this class so that
// datasets are byte-identical across platforms; std::uniform_int_distribution
// is implementation-defined and must not be used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform index in [0, n). Lemire multiply-shift; slight bias at 2^-64 is
    // irrelevant here and keeps the mapping platform-stable.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    // Derive an independent stream (seed, k) -> seed'. splitmix64 finalizer.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t k) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace ineq
