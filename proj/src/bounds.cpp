#include "jumpcode/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "jumpcode/errors.hpp"
#include "jumpcode/special.hpp"

namespace jumpcode {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

void check_rate(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("rate must be finite and >= 0");
}

}  // namespace

double log_tauberian_sum(double c, double r) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("tauberian: c must be finite and > 0");
    check_rate(r);
    const double log_tol = std::log(1e-14);
    double acc = kNegInf;
    // Terms in log form; the sum never exceeds 1, the partial sum is reached
    // near k ~ sqrt(c r) and the pmf tail then dies factorially.
    for (std::uint64_t k = 0;; ++k) {
        if (k > 10000000) throw std::logic_error("tauberian: truncation rule failed to trigger");
        double kk = static_cast<double>(k);
        double term = kk * std::log(c) - c - std::lgamma(kk + 1.0) - r / (kk + 1.0);
        acc = log_add(acc, term);
        // Tail <= pmf(k+1) / (1 - c/(k+2)) once the pmf ratio drops below 1.
        if (kk + 2.0 > c) {
            double log_tail =
                poisson_log_pmf(c, k + 1) - std::log1p(-c / (kk + 2.0));
            if (log_tail < log_tol + acc) break;
        }
    }
    return acc;
}

double tauberian_sum(double c, double r) { return std::exp(log_tauberian_sum(c, r)); }

double log_tauberian_sum_brute(double c, double r, std::uint64_t terms) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("tauberian: c must be finite and > 0");
    check_rate(r);
    if (terms == 0) throw DomainError("tauberian: need at least one term");
    std::vector<double> logs(terms);
    for (std::uint64_t k = 0; k < terms; ++k) {
        double kk = static_cast<double>(k);
        logs[k] = kk * std::log(c) - c - std::lgamma(kk + 1.0) - r / (kk + 1.0);
    }
    return logsumexp(logs);
}

double quant_upper_envelope(double r, double s, double gamma) {
    if (!(s >= 1.0)) throw DomainError("envelope: s must be >= 1");
    if (!(gamma >= 0.0)) throw DomainError("envelope: gamma must be >= 0");
    if (!(r > std::exp(1.0))) throw DomainError("envelope: rate must exceed e");
    return std::exp(-std::sqrt(2.0 / (s * (1.0 + gamma)) * r * std::log(r)));
}

double quant_lower_envelope(double r, double s) {
    if (!(s >= 1.0)) throw DomainError("envelope: s must be >= 1");
    if (!(r > std::exp(1.0))) throw DomainError("envelope: rate must exceed e");
    return std::exp(-std::sqrt(2.0 / s * r * std::log(r)));
}

double entropy_upper_envelope(double r, double lambda, double s, double w, double kappa_bar) {
    if (!(lambda > 0.0)) throw DomainError("envelope: lambda must be > 0");
    if (!(s >= 1.0)) throw DomainError("envelope: s must be >= 1");
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("envelope: diameter must be finite and > 0");
    if (!(kappa_bar > 0.0)) throw DomainError("envelope: kappa_bar must be > 0");
    check_rate(r);
    return 2.0 * w * kappa_bar * std::pow(-std::expm1(-lambda), 1.0 / s) * std::exp(-r / lambda);
}

double entropy_lower_envelope(double r, double lambda, double jump_floor) {
    if (!(lambda > 0.0)) throw DomainError("envelope: lambda must be > 0");
    if (!(jump_floor > 0.0)) throw DomainError("envelope: jump floor must be > 0");
    check_rate(r);
    return lower_constant_C_lambda(lambda) * std::min(1.0, lambda) * jump_floor *
           std::exp(-r / lambda);
}

double lower_constant_C_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be finite and > 0");
    // Closed form: c/lambda = alpha1 - log lambda - E1(lambda) - (1-e^-lambda)/lambda,
    // using E[N psi(N+1)] = lambda (log lambda + E1(lambda)) + (1 - e^-lambda).
    double c_over_lambda = alpha1() - std::log(lambda) - expint_e1(lambda) +
                           std::expm1(-lambda) / lambda;
    double closed = lambda / (8.0 * std::exp(1.0)) * std::exp(c_over_lambda);

    // Series route: accumulate E[N psi(N+1)] term by term with an incremental
    // digamma (psi(n+1) = psi(n) + 1/n) until the pmf drops below 1e-18 past
    // the mode.
    KahanSum mean;
    double h = -kEulerGamma;  // psi(1)
    std::uint64_t hi = poisson_tail_cutoff(lambda, 1e-18) + 8;
    for (std::uint64_t n = 1; n <= hi; ++n) {
        h += 1.0 / static_cast<double>(n);  // psi(n+1)
        mean.add(std::exp(poisson_log_pmf(lambda, n)) * static_cast<double>(n) * h);
    }
    double series = lambda / (8.0 * std::exp(1.0)) *
                    std::exp((lambda * alpha1() - mean.value()) / lambda);

    double rel = std::abs(closed - series) / std::max(std::abs(closed), 1e-300);
    if (rel > 1e-8) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "lower constant routes disagree at lambda=%.17g: closed=%.17g series=%.17g",
                      lambda, closed, series);
        throw OracleError(buf);
    }
    return closed;
}

double alpha1() { return -kEulerGamma - std::log(2.0); }

double alpha1_quadrature() {
    // E log X for X ~ Exp(2), split at 1. Head: expand e^{-2x} under the
    // integral, int_0^1 x^k log x dx = -1/(k+1)^2.
    KahanSum head;
    double pow_term = 1.0;  // (-2)^k / k!
    for (int k = 0; k <= 60; ++k) {
        double kk = static_cast<double>(k);
        head.add(-2.0 * pow_term / ((kk + 1.0) * (kk + 1.0)));
        pow_term *= -2.0 / (kk + 1.0);
    }
    // Tail: x = 1 + u gives 2 e^{-2} int_0^inf log(1+u) e^{-2u} du; truncate
    // at u = 30 (remainder < 1e-24) and integrate unit panels with 16-point
    // Gauss-Legendre.
    static const double node[8] = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
        0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
    static const double weight[8] = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    auto f = [](double u) { return std::log1p(u) * std::exp(-2.0 * u); };
    KahanSum tail;
    for (int panel = 0; panel < 30; ++panel) {
        double mid = static_cast<double>(panel) + 0.5;
        for (int i = 0; i < 8; ++i) {
            tail.add(0.5 * weight[i] * (f(mid - 0.5 * node[i]) + f(mid + 0.5 * node[i])));
        }
    }
    return head.value() + 2.0 * std::exp(-2.0) * tail.value();
}

double alpha2(std::uint64_t n) { return digamma_int(n + 1); }

namespace {

void split_cell(const std::vector<double>& pts, std::size_t lo, std::size_t hi, std::uint64_t j,
                int m, std::vector<std::pair<double, double>>& out) {
    if (hi - lo == 1) {
        out.emplace_back(std::ldexp(static_cast<double>(j), -m),
                         std::ldexp(static_cast<double>(j + 1), -m));
        return;
    }
    if (m >= 52) throw DomainError("dyadic partition: points need depth beyond 52");
    // x * 2^{m+1} is exact (power-of-two scaling), so child membership is an
    // exact integer comparison.
    std::size_t mid = lo;
    while (mid < hi &&
           static_cast<std::uint64_t>(std::floor(std::ldexp(pts[mid], m + 1))) == 2 * j) {
        ++mid;
    }
    if (mid > lo) split_cell(pts, lo, mid, 2 * j, m + 1, out);
    if (mid < hi) split_cell(pts, mid, hi, 2 * j + 1, m + 1, out);
}

}  // namespace

std::vector<std::pair<double, double>> dyadic_partition(std::vector<double> points) {
    for (double x : points) {
        if (!(x >= 0.0) || !(x < 1.0)) throw DomainError("dyadic partition: points must lie in [0,1)");
    }
    std::sort(points.begin(), points.end());
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i] == points[i - 1]) throw DomainError("dyadic partition: duplicate point");
    }
    std::vector<std::pair<double, double>> out;
    if (points.empty()) return out;
    split_cell(points, 0, points.size(), 0, 0, out);
    return out;
}

double fixed_config_lower_bound(double eps0, const std::vector<std::pair<double, double>>& intervals,
                                double r) {
    if (!(eps0 > 0.0)) throw DomainError("lower bound: eps0 must be > 0");
    check_rate(r);
    if (intervals.empty()) throw DomainError("lower bound: need at least one interval");
    double k = static_cast<double>(intervals.size());
    KahanSum log_prod;
    for (const auto& iv : intervals) {
        if (!(iv.first >= 0.0) || !(iv.second <= 1.0) || !(iv.first < iv.second)) {
            throw DomainError("lower bound: intervals must be nonempty subsets of [0,1]");
        }
        log_prod.add(std::log(iv.second - iv.first));
    }
    return eps0 * (k / (2.0 * std::exp(1.0))) * std::exp(log_prod.value() / k - r / k);
}

double composite_chain_bound(const std::vector<double>& count_pmf, double K, double r, double s,
                             double w, std::uint64_t k0) {
    if (!(K > 0.0)) throw DomainError("chain bound: scale must be > 0");
    if (!(s >= 1.0)) throw DomainError("chain bound: s must be >= 1");
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("chain bound: diameter must be finite and > 0");
    check_rate(r);
    double c_s = std::max(1.0, std::pow(2.0, s - 1.0));
    double d_s = c_s * std::pow(2.0, s) * (std::pow(std::exp(1.0) * w, s) + 1.0);
    KahanSum acc;
    for (std::size_t k = 0; k < count_pmf.size(); ++k) {
        double p = count_pmf[k];
        if (!(p >= 0.0)) throw DomainError("chain bound: pmf entries must be >= 0");
        if (p == 0.0) continue;
        double kk = static_cast<double>(k);
        if (k == 0) {
            acc.add(p * std::pow(2.0, s) * std::exp(-s * r));
        } else if (k <= k0) {
            acc.add(p * d_s * std::pow(kk, s) * std::exp(-r * s / (kk + 1.0)));
        } else {
            acc.add(p * std::pow(w, s));
        }
    }
    return K * acc.value();
}

double counting_chain_bound(const std::vector<double>& count_pmf, double R, double s,
                            std::uint64_t k0) {
    if (!(s >= 1.0)) throw DomainError("chain bound: s must be >= 1");
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("chain bound: rate must be finite and > 0");
    KahanSum acc;
    for (std::size_t k = 1; k < count_pmf.size(); ++k) {
        double p = count_pmf[k];
        if (!(p >= 0.0)) throw DomainError("chain bound: pmf entries must be >= 0");
        if (p == 0.0) continue;
        double kk = static_cast<double>(k);
        if (k <= k0) {
            acc.add(p * std::pow(kk * std::exp(-(R - kk) / kk), s));
        } else {
            acc.add(p * std::pow(kk, s));
        }
    }
    return acc.value();
}

}  // namespace jumpcode
