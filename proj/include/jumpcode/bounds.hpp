#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace jumpcode {

// S(c, r) = sum_k Poisson_c(k) e^{-r/(k+1)}. The sum underflows double for
// large r (~e^-1265 at r = 1e5), so the log form is the primitive; the plain
// form exponentiates it and may underflow to 0.
// Truncation: rigorous geometric tail bound below 1e-14 of the partial sum.
double log_tauberian_sum(double c, double r);
double tauberian_sum(double c, double r);
// Fixed-term logsumexp reference (oracle); terms chosen by the caller.
double log_tauberian_sum_brute(double c, double r, std::uint64_t terms);

// Distortion envelopes (values, not logs). Quantizer envelopes are the
// asymptotic curves exp(-sqrt(...)); domain r > e.
double quant_upper_envelope(double r, double s, double gamma);   // exp(-sqrt(2/(s(1+gamma)) r log r))
double quant_lower_envelope(double r, double s);                 // exp(-sqrt((2/s) r log r))
// Coder envelopes at rate r nats.
double entropy_upper_envelope(double r, double lambda, double s, double w, double kappa_bar);
double entropy_lower_envelope(double r, double lambda, double jump_floor);

// C_lambda = (lambda / 8e) exp(c / lambda), c = lambda alpha1 - E[N alpha2(N)],
// N ~ Poisson(lambda). Computed two ways (series and closed form via the
// exponential integral); OracleError if they disagree beyond 1e-8 relative.
double lower_constant_C_lambda(double lambda);

// alpha1 = E log(e1 ^ e2) = -euler_gamma - log 2 (iid standard exponentials).
double alpha1();
// Independent quadrature of int_0^inf (log x) 2 e^{-2x} dx (series head +
// Gauss-Legendre tail); no exponential-integral reuse.
double alpha1_quadrature();
// alpha2(n) = E log Gamma(n+1,1) = psi(n+1).
double alpha2(std::uint64_t n);

// Smallest dyadic partition cells separating the given points: binary split
// of [0,1) until every leaf holds at most one point; returns the k leaves
// holding one point each, left to right. Depth capped at 52.
std::vector<std::pair<double, double>> dyadic_partition(std::vector<double> points);

// eps0 (k / 2e) (prod |I_i|)^{1/k} e^{-r/k} for a fixed jump configuration.
double fixed_config_lower_bound(double eps0, const std::vector<std::pair<double, double>>& intervals,
                                double r);

// Proof-chain bound on E rho^s for the composite destination codebook at
// rate r: count pmf p, scale K, diameter w, cell ceiling k0.
double composite_chain_bound(const std::vector<double>& count_pmf, double K, double r, double s,
                             double w, std::uint64_t k0);
// Counting-path specialization: sum_{1<=k<=k0} p_k (k e^{-(R-k)/k})^s
// + sum_{k>k0} p_k k^s.
double counting_chain_bound(const std::vector<double>& count_pmf, double R, double s,
                            std::uint64_t k0);

}  // namespace jumpcode
