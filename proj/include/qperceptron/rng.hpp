#pragma once

#include <cstdint>
#include <random>

namespace qp {

// All randomness in the library flows through this wrapper around
// std::mt19937_64, whose output sequence is fixed by the C++ standard.
// std::*_distribution adapters are avoided because their mappings are
// implementation-defined; the draws below are specified bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Raw 64-bit word; used to spawn sub-stream seeds.
    std::uint64_t raw() { return gen_(); }

    // Uniform double in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), unbiased via rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

private:
    std::mt19937_64 gen_;
};

// splitmix64 finalizer; used to derive independent per-session seeds.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace qp
