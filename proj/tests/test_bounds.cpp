#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "jumpcode/bounds.hpp"
#include "jumpcode/errors.hpp"
#include "jumpcode/rng.hpp"
#include "jumpcode/special.hpp"

using namespace jumpcode;

TEST_CASE("tauberian sum is 1 at rate 0 and matches a brute logsumexp") {
    for (double c : {0.5, 1.0, 10.0}) CHECK(std::fabs(log_tauberian_sum(c, 0.0)) < 1e-12);
    for (double c : {1.0, 2.0}) {
        for (double r : {100.0, 1000.0}) {
            double fast = log_tauberian_sum(c, r);
            double brute = log_tauberian_sum_brute(c, r, 200000);
            CHECK(std::fabs(fast - brute) < 1e-11);
        }
    }
    CHECK(log_tauberian_sum(1.0, 100.0) == doctest::Approx(-20.726).epsilon(1e-3));
}

TEST_CASE("tauberian sum is monotone: down in rate, up in intensity") {
    double prev = 1.0;
    for (double r : {1.0, 10.0, 100.0, 1000.0}) {
        double v = log_tauberian_sum(1.0, r);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(log_tauberian_sum(0.5, 100.0) < log_tauberian_sum(1.0, 100.0));
    CHECK(log_tauberian_sum(1.0, 100.0) < log_tauberian_sum(2.0, 100.0));
}

TEST_CASE("tauberian sum stays finite in log space at extreme rates") {
    double lg = log_tauberian_sum(1.0, 1e5);
    CHECK(std::isfinite(lg));
    CHECK(lg < -1000.0);
    CHECK(tauberian_sum(1.0, 100.0) == doctest::Approx(std::exp(log_tauberian_sum(1.0, 100.0))));
    // the normalized decay ratio sits strictly inside (1/2, 1)
    for (double r : {100.0, 1000.0, 10000.0}) {
        double ratio = -log_tauberian_sum(1.0, r) / std::sqrt(2.0 * r * std::log(r));
        CHECK(ratio > 0.5);
        CHECK(ratio < 1.0);
    }
    CHECK_THROWS_AS(log_tauberian_sum(-1.0, 10.0), DomainError);
    CHECK_THROWS_AS(log_tauberian_sum(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(log_tauberian_sum_brute(1.0, 10.0, 0), DomainError);
}

TEST_CASE("lower_constant_C_lambda cross-validates its two routes on a grid") {
    // The function itself raises OracleError if series and closed form split.
    for (double lam : {0.1, 0.5, 1.0, 2.0, 8.0, 32.0}) {
        double c = lower_constant_C_lambda(lam);
        CHECK(std::isfinite(c));
        CHECK(c > 0.0);
    }
    CHECK(lower_constant_C_lambda(1.0)
          == doctest::Approx(0.0055093486212453267).epsilon(1e-9));
    CHECK_THROWS_AS(lower_constant_C_lambda(0.0), DomainError);
}

TEST_CASE("alpha1 agrees with its quadrature and a Monte Carlo draw") {
    CHECK(alpha1() == doctest::Approx(-kEulerGamma - std::log(2.0)).epsilon(1e-15));
    CHECK(std::fabs(alpha1_quadrature() - alpha1()) < 1e-9);

    Rng rng(404);
    const int n = 200000;
    KahanSum acc;
    for (int i = 0; i < n; ++i) {
        double e1 = -std::log(1.0 - rng.uniform01());
        double e2 = -std::log(1.0 - rng.uniform01());
        acc.add(std::log(std::min(e1, e2)));
    }
    // var(log Exp) = pi^2/6, so 4 sigma ~ 0.0115
    CHECK(std::fabs(acc.value() / n - alpha1()) < 0.012);
}

TEST_CASE("alpha2 is the digamma at n+1 and matches sampled gamma sums") {
    CHECK(alpha2(0) == doctest::Approx(-kEulerGamma).epsilon(1e-14));
    double h6 = 0;
    for (int i = 1; i <= 6; ++i) h6 += 1.0 / i;
    CHECK(alpha2(6) == doctest::Approx(h6 - kEulerGamma).epsilon(1e-14));

    Rng rng(405);
    const int n = 100000;
    KahanSum acc;
    for (int i = 0; i < n; ++i) {
        double g = 0;
        for (int j = 0; j < 7; ++j) g += -std::log(1.0 - rng.uniform01());
        acc.add(std::log(g));
    }
    CHECK(std::fabs(acc.value() / n - alpha2(6)) < 0.006);
}

TEST_CASE("dyadic_partition returns the known cells on pinned inputs") {
    CHECK(dyadic_partition({}).empty());

    auto whole = dyadic_partition({0.7});
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].first == 0.0);
    CHECK(whole[0].second == 1.0);

    auto halves = dyadic_partition({0.3, 0.6});
    REQUIRE(halves.size() == 2);
    CHECK(halves[0] == std::pair<double, double>{0.0, 0.5});
    CHECK(halves[1] == std::pair<double, double>{0.5, 1.0});

    auto eighth = dyadic_partition({0.1, 0.2});
    REQUIRE(eighth.size() == 2);
    CHECK(eighth[0] == std::pair<double, double>{0.0, 0.125});
    CHECK(eighth[1] == std::pair<double, double>{0.125, 0.25});
}

TEST_CASE("dyadic_partition cells are minimal separating dyadic leaves") {
    Rng rng(406);
    for (int rep = 0; rep < 1000; ++rep) {
        std::size_t k = 1 + rng.below(6);
        std::vector<double> pts;
        for (std::size_t i = 0; i < k; ++i) pts.push_back(rng.uniform01());
        std::vector<double> sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        bool dup = false;
        for (std::size_t i = 1; i < sorted.size(); ++i) dup |= sorted[i] == sorted[i - 1];
        if (dup) continue;

        auto cells = dyadic_partition(pts);
        REQUIRE(cells.size() == k);
        for (std::size_t i = 0; i < k; ++i) {
            auto [a, b] = cells[i];
            // the cell is dyadic: width 2^-m, aligned at j 2^-m
            double width = b - a;
            int m = (int)std::lround(-std::log2(width));
            REQUIRE(m >= 0);
            REQUIRE(m <= 52);
            CHECK(std::ldexp(width, m) == 1.0);
            double j = std::ldexp(a, m);
            CHECK(j == std::floor(j));
            // holds exactly its own point
            CHECK(sorted[i] >= a);
            CHECK(sorted[i] < b);
            if (i) CHECK(a >= cells[i - 1].second);
            // minimal: the parent cell holds at least two of the points
            if (m >= 1) {
                double pa = std::ldexp(std::floor(j / 2.0), -(m - 1));
                double pb = pa + std::ldexp(1.0, -(m - 1));
                int inside = 0;
                for (double x : sorted)
                    if (x >= pa && x < pb) ++inside;
                CHECK(inside >= 2);
            }
        }
    }
}

TEST_CASE("dyadic_partition rejects duplicates, range errors and deep ties") {
    CHECK_THROWS_AS(dyadic_partition({0.25, 0.25}), DomainError);
    CHECK_THROWS_AS(dyadic_partition({-0.1}), DomainError);
    CHECK_THROWS_AS(dyadic_partition({1.0}), DomainError);
    CHECK_THROWS_AS(dyadic_partition({0.0, std::ldexp(1.0, -53)}), DomainError);
}

TEST_CASE("fixed_config_lower_bound evaluates its closed form") {
    std::vector<std::pair<double, double>> whole{{0.0, 1.0}};
    CHECK(fixed_config_lower_bound(1.0, whole, 0.0)
          == doctest::Approx(1.0 / (2.0 * std::exp(1.0))).epsilon(1e-14));

    std::vector<std::pair<double, double>> halves{{0.0, 0.5}, {0.5, 1.0}};
    CHECK(fixed_config_lower_bound(1.0, halves, 2.0)
          == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(fixed_config_lower_bound(0.0, whole, 1.0), DomainError);
    CHECK_THROWS_AS(fixed_config_lower_bound(1.0, {}, 1.0), DomainError);
    CHECK_THROWS_AS(fixed_config_lower_bound(1.0, {{0.5, 0.4}}, 1.0), DomainError);
    CHECK_THROWS_AS(fixed_config_lower_bound(1.0, {{0.5, 1.5}}, 1.0), DomainError);
}

TEST_CASE("quantizer envelopes follow their formulas inside the domain") {
    double r = 10.0;
    CHECK(quant_upper_envelope(r, 2.0, 1.0)
          == doctest::Approx(std::exp(-std::sqrt(0.5 * r * std::log(r)))).epsilon(1e-12));
    CHECK(quant_lower_envelope(r, 2.0)
          == doctest::Approx(std::exp(-std::sqrt(r * std::log(r)))).epsilon(1e-12));
    CHECK(quant_lower_envelope(r, 1.0) < quant_upper_envelope(r, 1.0, 1.0));
    CHECK_THROWS_AS(quant_upper_envelope(2.0, 1.0, 0.0), DomainError);  // r <= e
    CHECK_THROWS_AS(quant_upper_envelope(10.0, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(quant_upper_envelope(10.0, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(quant_lower_envelope(1.0, 1.0), DomainError);
}

TEST_CASE("coder envelopes follow their formulas") {
    CHECK(entropy_upper_envelope(2.0, 1.0, 1.0, 1.0, 3.0)
          == doctest::Approx(6.0 * (-std::expm1(-1.0)) * std::exp(-2.0)).epsilon(1e-12));
    CHECK(entropy_upper_envelope(2.0, 1.0, 2.0, 1.0, 3.0)
          == doctest::Approx(6.0 * std::sqrt(-std::expm1(-1.0)) * std::exp(-2.0)).epsilon(1e-12));
    double c1 = lower_constant_C_lambda(1.0);
    CHECK(entropy_lower_envelope(2.0, 1.0, 1.0) == doctest::Approx(c1 * std::exp(-2.0)).epsilon(1e-10));
    CHECK_THROWS_AS(entropy_upper_envelope(2.0, 0.0, 1.0, 1.0, 3.0), DomainError);
    CHECK_THROWS_AS(entropy_lower_envelope(2.0, 1.0, 0.0), DomainError);
}

TEST_CASE("composite_chain_bound adds its three regimes exactly") {
    std::vector<double> pmf{0.5, 0.5};
    double e = std::exp(1.0);
    double with_k1 = std::exp(-4.0) + (e + 1.0) * std::exp(-2.0);
    CHECK(composite_chain_bound(pmf, 1.0, 4.0, 1.0, 1.0, 1) == doctest::Approx(with_k1).epsilon(1e-12));
    double truncated = std::exp(-4.0) + 0.5;  // k = 1 falls into the tail at k0 = 0
    CHECK(composite_chain_bound(pmf, 1.0, 4.0, 1.0, 1.0, 0) == doctest::Approx(truncated).epsilon(1e-12));
    // scale K multiplies through
    CHECK(composite_chain_bound(pmf, 3.0, 4.0, 1.0, 1.0, 1) == doctest::Approx(3.0 * with_k1));
    CHECK_THROWS_AS(composite_chain_bound(pmf, 0.0, 4.0, 1.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(composite_chain_bound(pmf, 1.0, 4.0, 0.5, 1.0, 1), DomainError);
    CHECK_THROWS_AS(composite_chain_bound({-0.5, 1.5}, 1.0, 4.0, 1.0, 1.0, 1), DomainError);
}

TEST_CASE("counting_chain_bound splits covered and tail jump counts") {
    CHECK(counting_chain_bound({0.0, 1.0}, 10.0, 1.0, 9) == doctest::Approx(std::exp(-9.0)).epsilon(1e-12));
    double want = 0.5 * std::exp(-22.0) + 0.5 * 4.0;
    CHECK(counting_chain_bound({0.0, 0.5, 0.5}, 12.0, 2.0, 1) == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(counting_chain_bound({1.0}, -1.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(counting_chain_bound({1.0}, 10.0, 0.0, 1), DomainError);
}
