#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace sybil {

/// splitmix64 step; used to derive independent seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic seed for the (index, repetition) cell of a sweep.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index,
                                 std::uint64_t repetition) noexcept {
    std::uint64_t s = base;
    splitmix64(s);
    s ^= 0x632be59bd9b4e019ULL * (index + 1);
    splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL * (repetition + 1);
    return splitmix64(s);
}

/// mt19937_64 with hand-rolled conversions. The engine's output sequence is
/// fixed by the standard, and avoiding std::*_distribution keeps sampled
/// graphs bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n); rejection sampling, no modulo bias.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_int(i)]);
        }
    }

    /// k distinct values from [0, n), uniformly without replacement.
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            std::swap(pool[i], pool[i + static_cast<int>(uniform_int(n - i))]);
        }
        pool.resize(k);
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace sybil
