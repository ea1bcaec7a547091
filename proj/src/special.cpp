#include "jumpcode/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jumpcode {

static constexpr double kInf = std::numeric_limits<double>::infinity();

double expint_e1(double x) {
    if (!(x > 0)) throw std::invalid_argument("expint_e1: x must be > 0");
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= x / k;  // x^k / k!
            double add = term / k;
            sum += (k % 2 == 1) ? add : -add;
            if (add < 1e-18) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    // E1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...))), modified Lentz.
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        double a = -(double)i * i;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x) * h;
}

double digamma_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("digamma_int: n must be >= 1");
    if (n <= 64) {
        double h = 0.0;
        for (std::uint64_t k = 1; k < n; ++k) h += 1.0 / (double)k;
        return h - kEulerGamma;
    }
    // Asymptotic expansion; error O(n^-8), far below 1e-13 for n > 64.
    double x = (double)n, x2 = x * x;
    return std::log(x) - 0.5 / x - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2) -
           1.0 / (252.0 * x2 * x2 * x2);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return -kInf;
    std::uint64_t kk = std::min(k, n - k);
    if (kk <= 1024) {
        // sum of log((n-kk+i)/i): immune to the lgamma cancellation that
        // wrecks the difference form when kk << n (ulp of lgamma(n) can
        // exceed the whole answer).
        KahanSum acc;
        for (std::uint64_t i = 1; i <= kk; ++i)
            acc.add(std::log((double)(n - kk + i)) - std::log((double)i));
        return acc.value();
    }
    return std::lgamma((double)n + 1.0) - std::lgamma((double)k + 1.0) -
           std::lgamma((double)(n - k) + 1.0);
}

static double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -(double)i * ((double)i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
    if (!(a > 0) || x < 0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double logsumexp(const std::vector<double>& v) {
    double m = -kInf;
    for (double x : v)
        if (x > m) m = x;
    if (m == -kInf) return -kInf;
    double s = 0.0;
    for (double x : v)
        if (x != -kInf) s += std::exp(x - m);
    return m + std::log(s);
}

double poisson_log_pmf(double c, std::uint64_t k) {
    if (c < 0) throw std::invalid_argument("poisson_log_pmf: c must be >= 0");
    if (c == 0.0) return k == 0 ? 0.0 : -kInf;
    return (double)k * std::log(c) - c - std::lgamma((double)k + 1.0);
}

std::vector<double> poisson_pmf_table(double c, std::uint64_t kmax) {
    std::vector<double> lp(kmax + 1, -kInf);
    if (c == 0.0) {
        std::vector<double> p(kmax + 1, 0.0);
        p[0] = 1.0;
        return p;
    }
    std::uint64_t mode = std::min<std::uint64_t>((std::uint64_t)std::floor(c), kmax);
    lp[mode] = poisson_log_pmf(c, mode);
    double lc = std::log(c);
    for (std::uint64_t k = mode; k-- > 0;) lp[k] = lp[k + 1] + std::log((double)(k + 1)) - lc;
    for (std::uint64_t k = mode + 1; k <= kmax; ++k) lp[k] = lp[k - 1] + lc - std::log((double)k);
    std::vector<double> p(kmax + 1);
    for (std::uint64_t k = 0; k <= kmax; ++k) p[k] = std::exp(lp[k]);
    return p;
}

std::uint64_t poisson_tail_cutoff(double c, double tail_bound) {
    if (!(tail_bound > 0)) throw std::invalid_argument("poisson_tail_cutoff: bad bound");
    if (c == 0.0) return 0;
    double log_bound = std::log(tail_bound);
    std::uint64_t start = (std::uint64_t)std::floor(c);
    double lc = std::log(c);
    double lp = poisson_log_pmf(c, start);
    // P(N > k) <= pmf(k+1) / (1 - c/(k+2)) once k + 2 > c (geometric domination).
    std::uint64_t limit = start + 2000 + (std::uint64_t)(200.0 * std::sqrt(c + 1.0));
    for (std::uint64_t k = start; k <= limit; ++k) {
        double lp_next = lp + lc - std::log((double)(k + 1));  // pmf(k+1)
        if ((double)k + 2.0 > c) {
            double lbound = lp_next - std::log(1.0 - c / ((double)k + 2.0));
            if (lbound < log_bound) return k;
        }
        lp = lp_next;
    }
    throw std::runtime_error("poisson_tail_cutoff: did not converge");
}

}  // namespace jumpcode
