#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jumpcode/codebook.hpp"

namespace jumpcode {

// MSB-first bit packing into bytes.
struct BitWriter {
    std::vector<std::uint8_t> bytes;
    std::uint64_t nbits = 0;

    void push_bit(bool b);
    void push_bits(std::uint64_t v, unsigned width);
    void push_big(const BigUint& v, std::uint64_t width);
    void push_gamma(std::uint64_t n);  // Elias gamma, n >= 1; gamma(1) = "1"
};

struct BitReader {
    const std::uint8_t* data = nullptr;
    std::uint64_t nbits = 0;
    std::uint64_t pos = 0;

    bool read_bit();
    std::uint64_t read_bits(unsigned width);
    BigUint read_big(std::uint64_t width);
    std::uint64_t read_gamma();
    std::uint64_t remaining() const { return nbits - pos; }
};

// Per-path record layout:
//   [gamma(k+1)] [position rank, fixed width for k] [value indices, fixed width]
// with k+1 value indices (Destinations, DiscreteExact) or k (Increments).
// Fixed widths derive from the config alone, so records are prefix-free.
enum class CoderMode { Destinations, Increments, DiscreteExact };

struct CoderPerK {
    PositionCodebook positions;
    std::uint64_t pos_width = 0;  // bits
};

struct CoderConfig {
    CoderMode mode = CoderMode::Destinations;
    double lambda = 1.0;
    double r = 1.0;  // nats
    DistortionSpace path_space;
    std::optional<EpsilonNet> value_net;         // Destinations
    std::optional<IncrementQuantizer> inc_quant; // Increments
    Point initial_value;                         // Increments
    unsigned value_width = 0;                    // bits per value symbol
    std::uint64_t k_max = 0;                     // Poisson tail below 1e-12
    double eps_value = 0;                        // e^{-r/lambda}
    std::vector<CoderPerK> per_k;                // k = 1..k_max
    double kappa_bar = 0;                        // max_k k * worst_error_k * e^{r/lambda}

    static CoderConfig destinations(const DistortionSpace& space, double lambda, double r);
    static CoderConfig discrete_exact(const DistortionSpace& space, double lambda, double r);
    static CoderConfig increments(const DistortionSpace& path_space, const IncrementLaw& inc,
                                  Point initial, double lambda, double r);
};

// Canonicalizing encoder: quantizes, rebuilds the collapsed path, re-derives
// symbols until stable, so decode(encode(x)) re-encodes to identical bits.
void encode_path(BitWriter& w, const JumpPath& x, const CoderConfig& cfg);
JumpPath decode_path(BitReader& rd, const CoderConfig& cfg);

// Container: magic 0x4A, version 0x01, u64 LE payload bit count, packed bits.
std::string encode_container(const std::vector<JumpPath>& paths, const CoderConfig& cfg);
std::vector<JumpPath> decode_container(std::string_view bytes, const CoderConfig& cfg);

// K (r + (lambda + 1) log N) with N the per-symbol value alphabet size.
double expected_rate_bound(const CoderConfig& cfg, double K = 1.0);

struct EmpiricalRate {
    double mean_bits = 0;
    double mean_nats = 0;
    double entropy_nats = 0;  // plug-in entropy of decoded paths
};
EmpiricalRate empirical_rate(const std::vector<JumpPath>& paths, const CoderConfig& cfg);

// 2 w kappa_bar (1 - e^-lambda)^{1/s} e^{-r/lambda}: distortion envelope of
// the coder on a bounded space (diameter w).
double coder_error_envelope(const CoderConfig& cfg, double s);

}  // namespace jumpcode
