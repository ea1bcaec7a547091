#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jumpcode/bounds.hpp"
#include "jumpcode/errors.hpp"
#include "jumpcode/harness.hpp"
#include "jumpcode/util.hpp"

namespace {

using namespace jumpcode;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw ConfigError("write failed: " + path);
}

std::vector<JumpPath> read_paths(const std::string& in_path, const DistortionSpace& space) {
    std::string text = in_path.empty()
                           ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                           : read_file(in_path);
    std::vector<JumpPath> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        out.push_back(parse_path(line, space));
    }
    return out;
}

void emit_paths(const std::vector<JumpPath>& paths, const std::string& out_path) {
    std::string text;
    for (const auto& p : paths) {
        text += serialize_path(p);
        text += '\n';
    }
    if (out_path.empty())
        std::fwrite(text.data(), 1, text.size(), stdout);
    else
        write_file(out_path, text);
}

// The built-in exactly-solvable law: constant 0, one 0->1 jump at 1/4, one at
// 3/4, with probabilities 1/2, 1/4, 1/4 on the two-point space.
FinitePathLaw builtin_law() {
    DistortionSpace space = two_point_space();
    std::vector<JumpPath> paths;
    paths.push_back(make_jump_path({}, {Label{0}}, space));
    paths.push_back(make_jump_path({0.25}, {Label{0}, Label{1}}, space));
    paths.push_back(make_jump_path({0.75}, {Label{0}, Label{1}}, space));
    return make_finite_path_law(space, std::move(paths), {0.5, 0.25, 0.25});
}

int run(int argc, char** argv) {
    CLI::App app{"rate-distortion workbench for piecewise-constant jump paths"};
    app.require_subcommand(1);

    std::string config_path, in_path, out_path;
    double rate = 0, delta = 1.0, s = 1.0, lambda = 1.0, gamma = 0.0, floor = 1.0;
    long long trials_override = -1, seed_override = -1;

    auto* sim = app.add_subcommand("simulate", "sample paths, one serialized path per line");
    sim->add_option("--config", config_path, "experiment config file")->required();
    sim->add_option("--trials", trials_override, "override config trials");
    sim->add_option("--seed", seed_override, "override config seed");
    sim->add_option("--out", out_path, "output file (default stdout)");

    auto* quant = app.add_subcommand("quantize", "map paths (stdin or --in) to nearest codewords");
    quant->add_option("--config", config_path)->required();
    quant->add_option("--rate", rate, "codebook rate budget, nats")->required();
    quant->add_option("--in", in_path, "serialized paths, one per line");
    quant->add_option("--out", out_path, "output file (default stdout)");

    auto* enc = app.add_subcommand("encode", "entropy-encode paths into a container");
    enc->add_option("--config", config_path)->required();
    enc->add_option("--rate", rate, "coder rate, nats")->required();
    enc->add_option("--in", in_path, "serialized paths, one per line");
    enc->add_option("--out", out_path, "container file")->required();

    auto* dec = app.add_subcommand("decode", "decode a container back to paths");
    dec->add_option("--config", config_path)->required();
    dec->add_option("--rate", rate, "coder rate used at encode time, nats")->required();
    dec->add_option("--in", in_path, "container file")->required();
    dec->add_option("--out", out_path, "output file (default stdout)");

    auto* curve = app.add_subcommand("curve", "rate sweep, CSV to config `out` or stdout");
    curve->add_option("--config", config_path)->required();
    curve->add_option("--out", out_path, "override config output path");

    auto* bnd = app.add_subcommand("bounds", "print envelope and constant values");
    bnd->add_option("--rate", rate, "rate, nats")->required();
    bnd->add_option("--lambda", lambda, "jump intensity");
    bnd->add_option("--s", s, "distortion moment");
    bnd->add_option("--gamma", gamma, "covering exponent");
    bnd->add_option("--floor", floor, "jump modulus floor");

    auto* orc = app.add_subcommand("oracle", "cross-check codebook vs brute force vs chain bound");
    orc->add_option("--rate", rate, "codebook rate, nats")->required();
    orc->add_option("--delta", delta, "covering slack");
    orc->add_option("--s", s, "distortion moment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (sim->parsed()) {
        ExperimentConfig c = parse_config(read_file(config_path));
        if (trials_override >= 0) c.trials = static_cast<std::uint64_t>(trials_override);
        if (seed_override >= 0) c.seed = static_cast<std::uint64_t>(seed_override);
        ProcessSpec spec = process_from_config(c);
        std::vector<JumpPath> paths;
        paths.reserve(c.trials);
        for (std::uint64_t i = 0; i < c.trials; ++i) {
            Rng rng = Rng::substream(c.seed, i);
            paths.push_back(sample_path(spec, rng));
        }
        emit_paths(paths, out_path);
    } else if (quant->parsed()) {
        ExperimentConfig c = parse_config(read_file(config_path));
        CompositePathCodebook cb = quantizer_from_config(c, rate);
        std::vector<JumpPath> paths = read_paths(in_path, cb.path_space);
        std::string text;
        for (const auto& x : paths) {
            NearestResult nr = nearest_codeword(cb, x);
            text += nr.index.to_string();
            text += '\t';
            text += fmt_g17(nr.distortion);
            text += '\t';
            text += serialize_path(nr.codeword);
            text += '\n';
        }
        if (out_path.empty())
            std::fwrite(text.data(), 1, text.size(), stdout);
        else
            write_file(out_path, text);
    } else if (enc->parsed()) {
        ExperimentConfig c = parse_config(read_file(config_path));
        CoderConfig cfg = coder_from_config(c, rate);
        std::vector<JumpPath> paths = read_paths(in_path, cfg.path_space);
        write_file(out_path, encode_container(paths, cfg));
    } else if (dec->parsed()) {
        ExperimentConfig c = parse_config(read_file(config_path));
        CoderConfig cfg = coder_from_config(c, rate);
        std::string bytes = read_file(in_path);
        emit_paths(decode_container(bytes, cfg), out_path);
    } else if (curve->parsed()) {
        ExperimentConfig c = parse_config(read_file(config_path));
        if (!out_path.empty()) c.out = out_path;
        write_csv(rate_curve_experiment(c), c.out);
    } else if (bnd->parsed()) {
        std::printf("alpha1=%s\n", fmt_g17(alpha1()).c_str());
        std::printf("c_lambda=%s\n", fmt_g17(lower_constant_C_lambda(lambda)).c_str());
        std::printf("log_tauberian=%s\n", fmt_g17(log_tauberian_sum(lambda, rate)).c_str());
        std::printf("tauberian=%s\n", fmt_g17(tauberian_sum(lambda, rate)).c_str());
        std::printf("entropy_lower=%s\n",
                    fmt_g17(entropy_lower_envelope(rate, lambda, floor)).c_str());
        double qu = std::numeric_limits<double>::quiet_NaN(), ql = qu;
        if (rate > std::exp(1.0)) {
            qu = quant_upper_envelope(rate, s, gamma);
            ql = quant_lower_envelope(rate, s);
        }
        std::printf("quant_upper=%s\n", fmt_g17(qu).c_str());
        std::printf("quant_lower=%s\n", fmt_g17(ql).c_str());
    } else if (orc->parsed()) {
        OracleReport rep = oracle_cross_check(builtin_law(), rate, delta, s);
        std::printf("brute=%s\n", fmt_g17(rep.brute).c_str());
        std::printf("constructed=%s\n", fmt_g17(rep.constructed).c_str());
        std::printf("chain=%s\n", fmt_g17(rep.chain).c_str());
        std::printf("codebook_size=%llu\n", static_cast<unsigned long long>(rep.codebook_size));
        std::printf("log_codebook_size=%s\n", fmt_g17(rep.log_codebook_size).c_str());
        std::printf("brute_points=%zu\n", rep.brute_points);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const OracleError& e) {
        std::fprintf(stderr, "oracle failure: %s\n", e.what());
        return 4;
    } catch (const FeasibilityError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
