#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "jumpcode/bigint.hpp"
#include "jumpcode/special.hpp"

using namespace jumpcode;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("expint_e1 matches tabulated values on both branches") {
    // Series branch (x <= 1) and continued-fraction branch (x > 1).
    CHECK(std::fabs(expint_e1(0.5) - 0.55977359477616081) < 1e-13);
    CHECK(std::fabs(expint_e1(1.0) - 0.21938393439552028) < 1e-13);
    CHECK(std::fabs(expint_e1(5.0) - 1.1482955912753257e-3) < 1e-15);
    CHECK(std::fabs(expint_e1(10.0) - 4.1569689296853246e-6) < 1e-18);
}

TEST_CASE("expint_e1 is continuous across the branch switch") {
    CHECK(std::fabs(expint_e1(0.9999) - expint_e1(1.0001)) < 1e-3);
    // Asymptotic e^-x(1/x - 1/x^2 + 2/x^3) at x = 50, relative error O(x^-3).
    double x = 50.0;
    double asym = std::exp(-x) * (1.0 / x - 1.0 / (x * x) + 2.0 / (x * x * x));
    CHECK(std::fabs(expint_e1(x) - asym) < 3e-4 * asym);
}

TEST_CASE("digamma_int equals harmonic numbers minus gamma") {
    CHECK(std::fabs(digamma_int(1) + kEulerGamma) < 1e-15);
    CHECK(std::fabs(digamma_int(2) - (1.0 - kEulerGamma)) < 1e-15);
    double h9 = 0;
    for (int i = 1; i <= 9; ++i) h9 += 1.0 / i;
    CHECK(std::fabs(digamma_int(10) - (h9 - kEulerGamma)) < 1e-14);
    // Asymptotic branch vs the exact sum.
    KahanSum h;
    for (int i = 1; i <= 999; ++i) h.add(1.0 / i);
    CHECK(std::fabs(digamma_int(1000) - (h.value() - kEulerGamma)) < 1e-12);
}

TEST_CASE("log_binomial is exact on small rows and stable at huge n") {
    CHECK(log_binomial(5, 7) == -kInf);
    CHECK(std::fabs(log_binomial(5, 2) - std::log(10.0)) < 1e-13);
    CHECK(std::fabs(log_binomial(52, 26) - BigUint::binomial(52, 26).log()) < 1e-11);
    // n ~ 4.6e18, k = 1: the lgamma difference form loses everything to
    // cancellation here; the sum form must return ln n.
    std::uint64_t n = 4600000000000000000ull;
    CHECK(std::fabs(log_binomial(n, 1) - std::log((double)n)) < 1e-9);
    std::uint64_t m = 1000000000000000ull;
    double by_hand = std::log((double)m) + std::log((double)(m - 1)) + std::log((double)(m - 2)) - std::log(6.0);
    CHECK(std::fabs(log_binomial(m, 3) - by_hand) < 1e-9);
}

TEST_CASE("gamma_q reduces to closed forms at a = 1, 1/2 and integer a") {
    for (double x : {0.25, 0.5, 1.0, 3.0, 10.0}) {
        CHECK(std::fabs(gamma_q(1.0, x) - std::exp(-x)) < 1e-13);
        CHECK(std::fabs(gamma_q(0.5, x) - std::erfc(std::sqrt(x))) < 1e-13);
        // Q(2, x) = (1 + x) e^-x.
        CHECK(std::fabs(gamma_q(2.0, x) - (1.0 + x) * std::exp(-x)) < 1e-13);
    }
    CHECK(gamma_q(3.0, 0.0) == 1.0);
    CHECK(std::fabs(chi2_pvalue(4.0, 2.0) - std::exp(-2.0)) < 1e-13);
}

TEST_CASE("logsumexp handles shifts and -inf entries") {
    CHECK(std::fabs(logsumexp({std::log(2.0), std::log(3.0)}) - std::log(5.0)) < 1e-14);
    CHECK(std::fabs(logsumexp({1000.0, 1000.0 + std::log(2.0)}) - (1000.0 + std::log(3.0))) < 1e-12);
    CHECK(std::fabs(logsumexp({-kInf, 0.0, -kInf}) - 0.0) < 1e-15);
    CHECK(logsumexp({-kInf, -kInf}) == -kInf);
}

TEST_CASE("poisson_log_pmf matches the direct formula") {
    double direct = -4.0 + 4.0 * std::log(4.0) - std::log(24.0);
    CHECK(std::fabs(poisson_log_pmf(4.0, 4) - direct) < 1e-13);
    CHECK(std::fabs(poisson_log_pmf(0.5, 0) + 0.5) < 1e-15);
    // Large c: pmf at the mode is ~ 1/sqrt(2 pi c); check to leading order.
    double at_mode = poisson_log_pmf(1e4, 10000);
    CHECK(std::fabs(at_mode + 0.5 * std::log(2.0 * 3.14159265358979324 * 1e4)) < 1e-4);
}

TEST_CASE("poisson_pmf_table survives extreme rates and normalizes") {
    auto t = poisson_pmf_table(5.0, 60);
    KahanSum sum;
    for (std::size_t k = 0; k < t.size(); ++k) {
        CHECK(std::fabs(t[k] - std::exp(poisson_log_pmf(5.0, k))) <= 1e-12 * t[k] + 1e-300);
        sum.add(t[k]);
    }
    CHECK(std::fabs(sum.value() - 1.0) < 1e-12);

    // c = 1e4: e^-c underflows but the mode-centered recursion must not.
    auto big = poisson_pmf_table(1e4, 11000);
    KahanSum bsum;
    for (std::size_t k = 0; k < big.size(); ++k) {
        bsum.add(big[k]);
        if (big[k] > 1e-300)
            CHECK(std::fabs(big[k] - std::exp(poisson_log_pmf(1e4, k))) <= 1e-9 * big[k]);
    }
    CHECK(big[10000] > 3e-3);
    CHECK(std::fabs(bsum.value() - 1.0) < 1e-9);
}

TEST_CASE("poisson_tail_cutoff is a sound tail bound") {
    for (double c : {0.5, 3.0, 30.0}) {
        for (double tb : {1e-6, 1e-12}) {
            std::uint64_t k = poisson_tail_cutoff(c, tb);
            auto t = poisson_pmf_table(c, k);
            KahanSum head;
            for (double p : t) head.add(p);
            CHECK(1.0 - head.value() <= tb + 1e-13);
            CHECK(k < 400);  // stays practical at these rates
        }
    }
}
