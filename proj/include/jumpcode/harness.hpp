#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jumpcode/codebook.hpp"
#include "jumpcode/coder.hpp"
#include "jumpcode/sim.hpp"

namespace jumpcode {

// Finitely supported path law, the exact-arithmetic test bench: distortions,
// optimal codebooks, and proof-chain bounds are all computable in closed form.
struct FinitePathLaw {
    DistortionSpace space;
    std::vector<JumpPath> paths;
    std::vector<double> probs;

    std::vector<double> count_pmf() const;  // P(#jumps = k), k = 0..max
};

FinitePathLaw make_finite_path_law(DistortionSpace space, std::vector<JumpPath> paths,
                                   std::vector<double> probs);

struct MonteCarloResult {
    double distortion = 0;   // (mean rho^s)^{1/s}
    double stderr_boot = 0;  // bootstrap (200 resamples) stderr of distortion
    double mean_bits = 0;    // coder rows; NaN for quantizer rows
    double mean_nats = 0;
    double entropy_nats = 0;  // plug-in over decoded paths; NaN for quantizer
    std::uint64_t trials = 0;
    std::vector<double> per_trial;          // rho_D per trial, index order
    std::vector<std::uint64_t> jump_counts;  // source-path jump counts
};

// Per-trial substreams of `seed`: trial i is identical across runs and across
// codebooks, so rate ladders share common random numbers.
MonteCarloResult mc_quantizer_distortion(const ProcessSpec& spec, const CompositePathCodebook& cb,
                                         double s, std::uint64_t trials, std::uint64_t seed,
                                         std::uint64_t exhaustive_cap = 100000);
MonteCarloResult mc_coder_distortion(const ProcessSpec& spec, const CoderConfig& cfg, double s,
                                     std::uint64_t trials, std::uint64_t seed);

// Exhaustive best n-point codebook: minimizes E min_i rho_D(X, c_i)^s over
// all n-subsets of (support + extra candidates). Lexicographically first
// optimum; CapacityError when C(#candidates, n) exceeds 1e7.
struct BruteForceResult {
    double distortion = 0;             // (E min rho^s)^{1/s}
    std::vector<std::size_t> chosen;   // candidate indices
};
BruteForceResult brute_force_optimal_quantizer(const FinitePathLaw& law, std::size_t n, double s,
                                               const std::vector<JumpPath>& extra_candidates = {});

// Builds the destination codebook at (r, delta), evaluates the law exactly
// three ways and checks brute <= constructed <= chain (OracleError on
// violation). Brute candidates include the codewords the encoder picked, so
// the left inequality is an identity-level check, not a heuristic.
struct OracleReport {
    double brute = 0;
    double constructed = 0;
    double chain = 0;
    double log_codebook_size = 0;
    std::uint64_t codebook_size = 0;  // saturating
    std::size_t brute_points = 0;
};
OracleReport oracle_cross_check(const FinitePathLaw& law, double r, double delta, double s);

// Flat key=value experiment description (# comments). Keys: family
// (alternating|cyclic|counting|cube|cantor), lambda, q, dim, depth, s, coder
// (entropy|quantizer), mode (auto|destinations|increments|exact), delta,
// rates (comma separated, nats), trials, seed, out.
struct ExperimentConfig {
    std::string family = "alternating";
    double lambda = 1.0;
    int q = 2;
    int dim = 1;
    int depth = 12;
    double s = 1.0;
    std::string coder = "entropy";
    std::string mode = "auto";
    double delta = 1.0;
    std::vector<double> rates{4.0};
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::string out;
};

ExperimentConfig parse_config(const std::string& text);

ProcessSpec process_from_config(const ExperimentConfig& c);
// Concrete mode ("auto" resolved: label families quantize destinations,
// counting/compound families quantize increments). ConfigError on a mode the
// family cannot support.
std::string resolved_mode(const ExperimentConfig& c);
CompositePathCodebook quantizer_from_config(const ExperimentConfig& c, double r);
CoderConfig coder_from_config(const ExperimentConfig& c, double r);
// Covering exponent of whichever space the rate budget quantizes.
double config_gamma(const ExperimentConfig& c);

struct CurvePoint {
    double rate_nominal_nats = 0;
    double rate_bits = 0;   // measured mean bits (coder) or log2 |C| (quantizer)
    double rate_nats = 0;
    double entropy_nats = 0;  // NaN for quantizer rows
    double distortion = 0;
    double stderr_boot = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string family;
    double lambda = 0;
    double s = 1;
    std::string coder;
    std::string mode;
    double gamma = 0;
    double envelope_upper = 0;  // NaN when undefined at this rate
    double envelope_lower = 0;
};

std::vector<CurvePoint> rate_curve_experiment(const ExperimentConfig& c);

// Exact schema, %.17g floats, LF line endings; byte-identical across reruns.
std::string curve_csv(const std::vector<CurvePoint>& rows);
void write_csv(const std::vector<CurvePoint>& rows, const std::string& out_path);  // "" = stdout

}  // namespace jumpcode
