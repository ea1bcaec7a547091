#pragma once

#include <cstdint>
#include <vector>

namespace jumpcode {

inline constexpr double kEulerGamma = 0.5772156649015328606;

// Compensated accumulator for long sums.
struct KahanSum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
// Series for x <= 1, modified Lentz continued fraction above. Abs err < 1e-13.
double expint_e1(double x);

// psi(n) for integer n >= 1: psi(1) = -gamma, psi(n+1) = psi(n) + 1/n.
double digamma_int(std::uint64_t n);

// ln C(n, k) via lgamma.
double log_binomial(std::uint64_t n, std::uint64_t k);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a), a > 0, x >= 0.
// Series for x < a + 1, continued fraction otherwise.
double gamma_q(double a, double x);

// Chi-square upper tail P(X >= stat) with df degrees of freedom.
inline double chi2_pvalue(double stat, double df) { return gamma_q(df / 2.0, stat / 2.0); }

// log(sum exp(v)) over finite entries; -inf entries are skipped.
double logsumexp(const std::vector<double>& v);

// Poisson(c) log pmf at k, safe for c up to ~1e9 (lgamma-based).
double poisson_log_pmf(double c, std::uint64_t k);

// pmf(0..kmax) computed mode-centered in log space, so e^{-c} underflow at
// large c cannot zero the vector. Entries below double range come out 0.
std::vector<double> poisson_pmf_table(double c, std::uint64_t kmax);

// Smallest k with a rigorous upper bound on P(N > k) below tail_bound.
std::uint64_t poisson_tail_cutoff(double c, double tail_bound);

}  // namespace jumpcode
