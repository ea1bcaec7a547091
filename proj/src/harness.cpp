#include "jumpcode/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "jumpcode/bounds.hpp"
#include "jumpcode/errors.hpp"
#include "jumpcode/parallel.hpp"
#include "jumpcode/special.hpp"
#include "jumpcode/util.hpp"

namespace jumpcode {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stderr of the s-rooted statistic by resampling; deterministic in `seed` and
// decoupled from the per-trial substream indices.
double bootstrap_stderr(const std::vector<double>& d, double s, std::uint64_t seed) {
    const int kResamples = 200;
    std::size_t n = d.size();
    if (n < 2) return 0.0;
    std::vector<double> pw(n);
    for (std::size_t i = 0; i < n; ++i) pw[i] = std::pow(d[i], s);
    Rng rng(splitmix64(seed) ^ 0xB7E151628AED2A6Bull);
    std::vector<double> stats(kResamples);
    for (int b = 0; b < kResamples; ++b) {
        KahanSum acc;
        for (std::size_t j = 0; j < n; ++j) acc.add(pw[rng.below(n)]);
        stats[b] = std::pow(acc.value() / static_cast<double>(n), 1.0 / s);
    }
    double mean = 0.0;
    for (double x : stats) mean += x;
    mean /= kResamples;
    double var = 0.0;
    for (double x : stats) var += (x - mean) * (x - mean);
    return std::sqrt(var / (kResamples - 1));
}

void finish_distortion(MonteCarloResult& res, double s, std::uint64_t seed) {
    KahanSum acc;
    for (double d : res.per_trial) acc.add(std::pow(d, s));
    res.distortion = std::pow(acc.value() / static_cast<double>(res.trials), 1.0 / s);
    res.stderr_boot = bootstrap_stderr(res.per_trial, s, seed);
}

}  // namespace

std::vector<double> FinitePathLaw::count_pmf() const {
    std::size_t kmax = 0;
    for (const auto& p : paths) kmax = std::max(kmax, p.jumps());
    std::vector<double> pmf(kmax + 1, 0.0);
    for (std::size_t i = 0; i < paths.size(); ++i) pmf[paths[i].jumps()] += probs[i];
    return pmf;
}

FinitePathLaw make_finite_path_law(DistortionSpace space, std::vector<JumpPath> paths,
                                   std::vector<double> probs) {
    if (paths.empty() || paths.size() != probs.size())
        throw ConfigError("law needs equally many paths and probabilities, at least one");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw ConfigError("law probabilities must be > 0");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw ConfigError("law probabilities must sum to 1");
    for (const auto& f : paths) make_jump_path(f.times, f.values, space);  // revalidate
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j)
            if (path_equal(paths[i], paths[j])) throw ConfigError("duplicate support path");
    return {std::move(space), std::move(paths), std::move(probs)};
}

MonteCarloResult mc_quantizer_distortion(const ProcessSpec& spec, const CompositePathCodebook& cb,
                                         double s, std::uint64_t trials, std::uint64_t seed,
                                         std::uint64_t exhaustive_cap) {
    if (trials == 0) throw DomainError("trials must be >= 1");
    if (!(s >= 1.0)) throw DomainError("s must be >= 1");
    MonteCarloResult res;
    res.trials = trials;
    res.per_trial.resize(trials);
    res.jump_counts.resize(trials);
    parallel_for(trials, [&](std::uint64_t i) {
        Rng rng = Rng::substream(seed, i);
        JumpPath x = sample_path(spec, rng);
        res.jump_counts[i] = x.jumps();
        res.per_trial[i] = nearest_codeword(cb, x, exhaustive_cap).distortion;
    });
    finish_distortion(res, s, seed);
    res.mean_bits = res.mean_nats = res.entropy_nats = kNaN;
    return res;
}

MonteCarloResult mc_coder_distortion(const ProcessSpec& spec, const CoderConfig& cfg, double s,
                                     std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw DomainError("trials must be >= 1");
    if (!(s >= 1.0)) throw DomainError("s must be >= 1");
    MonteCarloResult res;
    res.trials = trials;
    res.per_trial.resize(trials);
    res.jump_counts.resize(trials);
    std::vector<double> bits(trials);
    std::vector<std::string> keys(trials);
    parallel_for(trials, [&](std::uint64_t i) {
        Rng rng = Rng::substream(seed, i);
        JumpPath x = sample_path(spec, rng);
        res.jump_counts[i] = x.jumps();
        BitWriter w;
        encode_path(w, x, cfg);
        BitReader rd{w.bytes.data(), w.nbits, 0};
        JumpPath xhat = decode_path(rd, cfg);
        if (rd.remaining() != 0) throw std::logic_error("record left unread bits");
        res.per_trial[i] = path_distortion(x, xhat, cfg.path_space);
        bits[i] = static_cast<double>(w.nbits);
        keys[i] = serialize_path(xhat);
    });
    finish_distortion(res, s, seed);
    KahanSum bsum;
    for (double b : bits) bsum.add(b);
    res.mean_bits = bsum.value() / static_cast<double>(trials);
    res.mean_nats = res.mean_bits * std::log(2.0);
    std::map<std::string, std::uint64_t> hist;
    for (const auto& k : keys) ++hist[k];
    KahanSum ent;
    for (const auto& [key, cnt] : hist) {
        double p = static_cast<double>(cnt) / static_cast<double>(trials);
        ent.add(-p * std::log(p));
    }
    res.entropy_nats = ent.value();
    return res;
}

BruteForceResult brute_force_optimal_quantizer(const FinitePathLaw& law, std::size_t n, double s,
                                               const std::vector<JumpPath>& extra_candidates) {
    if (!(s >= 1.0)) throw DomainError("s must be >= 1");
    std::vector<const JumpPath*> cand;
    cand.reserve(law.paths.size() + extra_candidates.size());
    for (const auto& p : law.paths) cand.push_back(&p);
    for (const auto& e : extra_candidates) {
        bool dup = false;
        for (const auto* c : cand)
            if (path_equal(*c, e)) {
                dup = true;
                break;
            }
        if (!dup) cand.push_back(&e);
    }
    if (n == 0 || n > cand.size()) throw DomainError("codebook size must be in [1, #candidates]");
    if (cand.size() > 30) throw CapacityError("brute force supports at most 30 candidate paths");
    BigUint combos = BigUint::binomial(cand.size(), n);
    if (!combos.fits_u64() || combos.to_u64_saturating() > 10000000ull)
        throw CapacityError("brute force budget exceeded: C(candidates, n) > 1e7");

    std::size_t m = law.paths.size();
    std::vector<std::vector<double>> cost(m, std::vector<double>(cand.size()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cand.size(); ++j)
            cost[i][j] = std::pow(path_distortion(law.paths[i], *cand[j], law.space), s);

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_idx;
    for (;;) {
        double risk = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double mn = cost[i][idx[0]];
            for (std::size_t j = 1; j < n; ++j) mn = std::min(mn, cost[i][idx[j]]);
            risk += law.probs[i] * mn;
        }
        // strict improvement keeps the lexicographically first optimum
        if (risk < best) {
            best = risk;
            best_idx = idx;
        }
        std::size_t pos = n;
        while (pos > 0 && idx[pos - 1] == cand.size() - n + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return {std::pow(best, 1.0 / s), std::move(best_idx)};
}

OracleReport oracle_cross_check(const FinitePathLaw& law, double r, double delta, double s) {
    if (!(s >= 1.0)) throw DomainError("s must be >= 1");
    CompositePathCodebook cb = composite_destinations_codebook(law.space, r, delta);
    std::vector<JumpPath> picked;
    KahanSum cons;
    for (std::size_t i = 0; i < law.paths.size(); ++i) {
        NearestResult nr = nearest_codeword(cb, law.paths[i]);
        cons.add(law.probs[i] * std::pow(nr.distortion, s));
        bool dup = false;
        for (const auto& p : picked)
            if (path_equal(p, nr.codeword)) {
                dup = true;
                break;
            }
        if (!dup) picked.push_back(std::move(nr.codeword));
    }
    OracleReport rep;
    rep.constructed = std::pow(cons.value(), 1.0 / s);
    rep.log_codebook_size = cb.log_total;
    rep.codebook_size = cb.total_size.to_u64_saturating();
    std::size_t n = law.paths.size();
    if (rep.codebook_size < n) n = static_cast<std::size_t>(rep.codebook_size);
    rep.brute_points = n;
    // The picked codewords are feasible brute candidates, so brute <=
    // constructed holds by construction, independent of shortlist quality.
    rep.brute = brute_force_optimal_quantizer(law, n, s, picked).distortion;
    double w = *law.space.diameter();
    rep.chain = composite_chain_bound(law.count_pmf(), 1.0, r, s, w, cb.k0);
    char buf[200];
    if (rep.brute > rep.constructed * (1 + 1e-9) + 1e-15) {
        std::snprintf(buf, sizeof buf, "oracle: brute %.17g exceeds constructed %.17g", rep.brute,
                      rep.constructed);
        throw OracleError(buf);
    }
    if (rep.constructed > rep.chain * (1 + 1e-9) + 1e-15) {
        std::snprintf(buf, sizeof buf, "oracle: constructed %.17g exceeds chain bound %.17g",
                      rep.constructed, rep.chain);
        throw OracleError(buf);
    }
    return rep;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void validate_experiment(const ExperimentConfig& c) {
    static const char* families[] = {"alternating", "cyclic", "counting", "cube", "cantor"};
    bool ok = false;
    for (const char* f : families) ok = ok || c.family == f;
    if (!ok) throw ConfigError("unknown family: " + c.family);
    if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) throw ConfigError("lambda must be > 0");
    if (c.q < 2) throw ConfigError("q must be >= 2");
    if (c.dim < 1) throw ConfigError("dim must be >= 1");
    if (c.depth < 1 || c.depth > 40) throw ConfigError("depth must be in [1, 40]");
    if (!(c.s >= 1.0)) throw ConfigError("s must be >= 1");
    if (c.coder != "entropy" && c.coder != "quantizer")
        throw ConfigError("coder must be entropy or quantizer");
    if (c.mode != "auto" && c.mode != "destinations" && c.mode != "increments" && c.mode != "exact")
        throw ConfigError("mode must be auto, destinations, increments, or exact");
    if (!(c.delta >= 0.05 && c.delta <= 8.0)) throw ConfigError("delta must be in [0.05, 8]");
    if (c.rates.empty()) throw ConfigError("rates must be nonempty");
    for (double r : c.rates)
        if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("rates must be finite and > 0");
    if (c.trials == 0) throw ConfigError("trials must be >= 1");
}

IncrementLaw config_increments(const ExperimentConfig& c) {
    if (c.family == "counting") return point_mass_increments(Vec{1.0});
    if (c.family == "cube") return uniform_cube_increments(c.dim);
    if (c.family == "cantor") return cantor_uniform_increments(c.depth);
    throw ConfigError("family " + c.family + " has no increment law");
}

double jump_floor(const ExperimentConfig& c, const ProcessSpec& spec) {
    if (c.family == "alternating" || c.family == "cyclic")
        return min_positive_distance(spec.value_space);
    if (c.family == "counting") return 1.0;
    return kNaN;  // continuous increments have no modulus floor
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line must be key=value: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "family") {
            c.family = val;
        } else if (key == "lambda") {
            c.lambda = parse_double_strict(val);
        } else if (key == "q") {
            c.q = static_cast<int>(parse_int_strict(val));
        } else if (key == "dim") {
            c.dim = static_cast<int>(parse_int_strict(val));
        } else if (key == "depth") {
            c.depth = static_cast<int>(parse_int_strict(val));
        } else if (key == "s") {
            c.s = parse_double_strict(val);
        } else if (key == "coder") {
            c.coder = val;
        } else if (key == "mode") {
            c.mode = val;
        } else if (key == "delta") {
            c.delta = parse_double_strict(val);
        } else if (key == "rates") {
            c.rates.clear();
            std::istringstream rs(val);
            std::string tok;
            while (std::getline(rs, tok, ',')) c.rates.push_back(parse_double_strict(trim(tok)));
        } else if (key == "trials") {
            long long t = parse_int_strict(val);
            if (t < 1) throw ConfigError("trials must be >= 1");
            c.trials = static_cast<std::uint64_t>(t);
        } else if (key == "seed") {
            long long v = parse_int_strict(val);
            if (v < 0) throw ConfigError("seed must be >= 0");
            c.seed = static_cast<std::uint64_t>(v);
        } else if (key == "out") {
            c.out = val;
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    validate_experiment(c);
    return c;
}

ProcessSpec process_from_config(const ExperimentConfig& c) {
    if (c.family == "alternating") return alternating_process(c.lambda);
    if (c.family == "cyclic") return cyclic_process(c.lambda, c.q);
    if (c.family == "counting") return counting_process(c.lambda);
    return compound_process(c.lambda, config_increments(c));
}

std::string resolved_mode(const ExperimentConfig& c) {
    bool label_family = c.family == "alternating" || c.family == "cyclic";
    std::string m = c.mode;
    if (m == "auto") m = label_family ? "destinations" : "increments";
    if (m == "destinations" && !label_family)
        throw ConfigError("destinations mode needs a label family (alternating, cyclic)");
    if (m == "increments" && label_family)
        throw ConfigError("increments mode needs counting, cube, or cantor");
    if (m == "exact" && (!label_family || c.coder != "entropy"))
        throw ConfigError("exact mode is entropy-coder-only on label families");
    return m;
}

CompositePathCodebook quantizer_from_config(const ExperimentConfig& c, double r) {
    std::string m = resolved_mode(c);
    if (m == "exact") throw ConfigError("exact mode is entropy-coder-only");
    ProcessSpec spec = process_from_config(c);
    if (m == "destinations") return composite_destinations_codebook(spec.value_space, r, c.delta);
    Point initial = Vec(static_cast<std::size_t>(spec.value_space.dim), 0.0);
    return composite_increments_codebook(spec.value_space, config_increments(c), initial, r,
                                         c.delta);
}

CoderConfig coder_from_config(const ExperimentConfig& c, double r) {
    std::string m = resolved_mode(c);
    ProcessSpec spec = process_from_config(c);
    if (m == "destinations") return CoderConfig::destinations(spec.value_space, c.lambda, r);
    if (m == "exact") return CoderConfig::discrete_exact(spec.value_space, c.lambda, r);
    Point initial = Vec(static_cast<std::size_t>(spec.value_space.dim), 0.0);
    return CoderConfig::increments(spec.value_space, config_increments(c), initial, c.lambda, r);
}

double config_gamma(const ExperimentConfig& c) {
    std::string m = resolved_mode(c);
    if (m == "destinations" || m == "exact")
        return process_from_config(c).value_space.covering_exponent();
    if (c.family == "counting") return 0.0;
    return config_increments(c).space.covering_exponent();
}

std::vector<CurvePoint> rate_curve_experiment(const ExperimentConfig& c) {
    ProcessSpec spec = process_from_config(c);
    std::string m = resolved_mode(c);
    double gamma = config_gamma(c);
    std::vector<CurvePoint> rows;
    rows.reserve(c.rates.size());
    for (double r : c.rates) {
        CurvePoint p;
        p.rate_nominal_nats = r;
        p.trials = c.trials;
        p.seed = c.seed;
        p.family = c.family;
        p.lambda = c.lambda;
        p.s = c.s;
        p.coder = c.coder;
        p.mode = m;
        p.gamma = gamma;
        if (c.coder == "entropy") {
            CoderConfig cfg = coder_from_config(c, r);
            MonteCarloResult res = mc_coder_distortion(spec, cfg, c.s, c.trials, c.seed);
            p.rate_bits = res.mean_bits;
            p.rate_nats = res.mean_nats;
            p.entropy_nats = res.entropy_nats;
            p.distortion = res.distortion;
            p.stderr_boot = res.stderr_boot;
            try {
                p.envelope_upper = coder_error_envelope(cfg, c.s);
            } catch (const FeasibilityError&) {
                p.envelope_upper = kNaN;
            }
            double floor = jump_floor(c, spec);
            p.envelope_lower = std::isnan(floor) ? kNaN : entropy_lower_envelope(r, c.lambda, floor);
        } else {
            CompositePathCodebook cb = quantizer_from_config(c, r);
            MonteCarloResult res = mc_quantizer_distortion(spec, cb, c.s, c.trials, c.seed);
            p.rate_bits = cb.log_total / std::log(2.0);
            p.rate_nats = cb.log_total;
            p.entropy_nats = kNaN;
            p.distortion = res.distortion;
            p.stderr_boot = res.stderr_boot;
            bool asymptotic = r > std::exp(1.0);
            p.envelope_upper = asymptotic ? quant_upper_envelope(r, c.s, gamma) : kNaN;
            p.envelope_lower = asymptotic ? quant_lower_envelope(r, c.s) : kNaN;
        }
        rows.push_back(std::move(p));
    }
    return rows;
}

std::string curve_csv(const std::vector<CurvePoint>& rows) {
    std::string out =
        "rate_nominal_nats,rate_bits,rate_nats,entropy_nats,distortion,stderr,trials,seed,"
        "family,lambda,s,coder,mode,gamma,envelope_upper,envelope_lower\n";
    for (const auto& p : rows) {
        out += fmt_g17(p.rate_nominal_nats);
        out += ',';
        out += fmt_g17(p.rate_bits);
        out += ',';
        out += fmt_g17(p.rate_nats);
        out += ',';
        out += fmt_g17(p.entropy_nats);
        out += ',';
        out += fmt_g17(p.distortion);
        out += ',';
        out += fmt_g17(p.stderr_boot);
        out += ',';
        out += std::to_string(p.trials);
        out += ',';
        out += std::to_string(p.seed);
        out += ',';
        out += p.family;
        out += ',';
        out += fmt_g17(p.lambda);
        out += ',';
        out += fmt_g17(p.s);
        out += ',';
        out += p.coder;
        out += ',';
        out += p.mode;
        out += ',';
        out += fmt_g17(p.gamma);
        out += ',';
        out += fmt_g17(p.envelope_upper);
        out += ',';
        out += fmt_g17(p.envelope_lower);
        out += '\n';
    }
    return out;
}

void write_csv(const std::vector<CurvePoint>& rows, const std::string& out_path) {
    std::string text = curve_csv(rows);
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + out_path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw ConfigError("write failed: " + out_path);
}

}  // namespace jumpcode
