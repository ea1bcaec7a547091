#pragma once

#include <cstdint>
#include <random>

namespace jumpcode {

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic RNG with addressable substreams. Substream i of a master seed
// is independent of i's ordering in the program: substream(m, i) always yields
// the same stream, which is what the common-random-numbers experiments rely on.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    static Rng substream(std::uint64_t master, std::uint64_t index) {
        return Rng(master + index * 0x9E3779B97F4A7C15ull);
    }

    // Uniform on [0,1), 53-bit resolution.
    double uniform01() {
        return (double)(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform on {0, ..., n-1}, unbiased (rejection).
    std::uint64_t below(std::uint64_t n);

    // Poisson(c): pmf-recursion inversion for c <= 30, transformed rejection
    // with a normal-shaped hat above. Uses only uniform01 draws, so the stream
    // is portable across standard library implementations.
    std::uint64_t poisson(double c);

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace jumpcode
