#include "jumpcode/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace jumpcode {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be > 0");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = eng_();
    } while (x >= limit);
    return x % n;
}

static std::uint64_t poisson_inversion(Rng& rng, double c) {
    // Multiplicative inversion; safe only while e^{-c} is comfortably normal.
    double p = std::exp(-c);
    double u = rng.uniform01();
    std::uint64_t k = 0;
    double cdf = p;
    while (u > cdf) {
        ++k;
        p *= c / (double)k;
        cdf += p;
        if (k > 200 + (std::uint64_t)(20 * c)) break;  // u in the far tail noise
    }
    return k;
}

static std::uint64_t poisson_ptrd(Rng& rng, double c) {
    // Hörmann's transformed rejection with squeeze; valid for c >= 10.
    const double smu = std::sqrt(c);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_c = std::log(c);
    for (;;) {
        double u = rng.uniform01() - 0.5;
        double v = rng.uniform01();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + c + 0.43);
        if (us >= 0.07 && v <= v_r) return (std::uint64_t)kf;
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        double k = kf;
        double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        double rhs = k * log_c - c - std::lgamma(k + 1.0);
        if (lhs <= rhs) return (std::uint64_t)kf;
    }
}

std::uint64_t Rng::poisson(double c) {
    if (c < 0) throw std::invalid_argument("Rng::poisson: c must be >= 0");
    if (c == 0.0) return 0;
    if (c <= 30.0) return poisson_inversion(*this, c);
    return poisson_ptrd(*this, c);
}

}  // namespace jumpcode
