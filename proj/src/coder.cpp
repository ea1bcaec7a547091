#include "jumpcode/coder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "jumpcode/special.hpp"

namespace jumpcode {

// --------------------------------------------------------------------- bits

void BitWriter::push_bit(bool b) {
    std::size_t byte = (std::size_t)(nbits / 8);
    if (byte >= bytes.size()) bytes.push_back(0);
    if (b) bytes[byte] |= (std::uint8_t)(0x80u >> (nbits % 8));
    ++nbits;
}

void BitWriter::push_bits(std::uint64_t v, unsigned width) {
    if (width > 64) throw std::invalid_argument("push_bits width > 64");
    if (width < 64 && (v >> width) != 0) throw std::invalid_argument("value does not fit width");
    for (unsigned i = width; i-- > 0;) push_bit((v >> i) & 1u);
}

void BitWriter::push_big(const BigUint& v, std::uint64_t width) {
    if (v.bit_length() > width) throw std::invalid_argument("big value does not fit width");
    for (std::uint64_t i = width; i-- > 0;) push_bit(v.bit(i));
}

void BitWriter::push_gamma(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("gamma code needs n >= 1");
    unsigned L = 0;
    while ((n >> (L + 1)) != 0) ++L;  // floor(log2 n)
    for (unsigned i = 0; i < L; ++i) push_bit(false);
    push_bits(n, L + 1);
}

bool BitReader::read_bit() {
    if (pos >= nbits) throw DecodeError("bit stream truncated at bit " + std::to_string(pos));
    bool b = (data[(std::size_t)(pos / 8)] >> (7 - pos % 8)) & 1u;
    ++pos;
    return b;
}

std::uint64_t BitReader::read_bits(unsigned width) {
    if (width > 64) throw std::invalid_argument("read_bits width > 64");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1u : 0u);
    return v;
}

BigUint BitReader::read_big(std::uint64_t width) {
    BigUint v;
    for (std::uint64_t i = 0; i < width; ++i) {
        v.mul_u64(2);
        if (read_bit()) v.add(BigUint(1));
    }
    return v;
}

std::uint64_t BitReader::read_gamma() {
    unsigned L = 0;
    while (!read_bit()) {
        if (++L > 63) throw DecodeError("gamma code run too long");
    }
    std::uint64_t n = 1;
    for (unsigned i = 0; i < L; ++i) n = (n << 1) | (read_bit() ? 1u : 0u);
    return n;
}

// ------------------------------------------------------------------- config

static std::uint64_t width_for(const BigUint& size) {
    if (size.is_zero()) throw std::logic_error("empty codebook");
    BigUint top = size;
    top.sub(BigUint(1));
    return top.bit_length();
}

static unsigned width_for_u64(std::uint64_t size) {
    if (size == 0) throw std::logic_error("empty alphabet");
    unsigned w = 0;
    std::uint64_t top = size - 1;
    while (top) {
        ++w;
        top >>= 1;
    }
    return w;
}

static void coder_common(CoderConfig& cfg) {
    if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda))
        throw ConfigError("jump intensity must be positive and finite");
    if (!(cfg.r > 0.0) || !std::isfinite(cfg.r)) throw ConfigError("rate must be positive and finite");
    if (cfg.r < cfg.lambda * std::log(2.0) - 1e-12)
        throw FeasibilityError("rate below the coder floor lambda log 2");
    cfg.eps_value = std::exp(-cfg.r / cfg.lambda);
    cfg.k_max = poisson_tail_cutoff(cfg.lambda, 1e-12);
    cfg.kappa_bar = 0.0;
    double erl = std::exp(cfg.r / cfg.lambda);
    for (std::uint64_t k = 1; k <= cfg.k_max; ++k) {
        CoderPerK pk;
        try {
            pk.positions = ordered_codebook_for_rate(k, (double)k * cfg.r / cfg.lambda);
        } catch (const CapacityError&) {
            throw;  // grid genuinely too large for 64-bit m; do not degrade
        } catch (const FeasibilityError&) {
            pk.positions = single_center_codebook(k);  // below this k's grid floor
        }
        pk.pos_width = width_for(pk.positions.size);
        cfg.kappa_bar = std::max(cfg.kappa_bar, (double)k * pk.positions.worst_error * erl);
        cfg.per_k.push_back(std::move(pk));
    }
}

CoderConfig CoderConfig::destinations(const DistortionSpace& space, double lambda, double r) {
    CoderConfig cfg;
    cfg.mode = CoderMode::Destinations;
    cfg.lambda = lambda;
    cfg.r = r;
    cfg.path_space = space;
    coder_common(cfg);
    if (!space.bounded()) throw FeasibilityError("destination coding needs a bounded value space");
    cfg.value_net = EpsilonNet::build(space, cfg.eps_value);
    cfg.value_width = cfg.value_net->size > 1 ? width_for_u64(cfg.value_net->size) : 0;
    return cfg;
}

CoderConfig CoderConfig::discrete_exact(const DistortionSpace& space, double lambda, double r) {
    if (space.kind != SpaceKind::FiniteDiscrete)
        throw ConfigError("exact value coding needs a finite alphabet");
    CoderConfig cfg;
    cfg.mode = CoderMode::DiscreteExact;
    cfg.lambda = lambda;
    cfg.r = r;
    cfg.path_space = space;
    coder_common(cfg);
    cfg.value_width = space.q > 1 ? width_for_u64((std::uint64_t)space.q) : 0;
    return cfg;
}

CoderConfig CoderConfig::increments(const DistortionSpace& path_space, const IncrementLaw& inc,
                                    Point initial, double lambda, double r) {
    if (path_space.kind != SpaceKind::RealVector)
        throw ConfigError("increment coding describes vector-valued paths");
    path_space.validate_point(initial);
    CoderConfig cfg;
    cfg.mode = CoderMode::Increments;
    cfg.lambda = lambda;
    cfg.r = r;
    cfg.path_space = path_space;
    cfg.initial_value = std::move(initial);
    coder_common(cfg);
    cfg.inc_quant = increment_quantizer(inc, cfg.eps_value);
    cfg.value_width = cfg.inc_quant->size() > 1 ? width_for_u64(cfg.inc_quant->size()) : 0;
    return cfg;
}

// ------------------------------------------------------------------ symbols

namespace {

struct Symbols {
    std::uint64_t k = 0;
    BigUint pos_rank;
    std::vector<std::uint64_t> values;
};

Point incr_add(const CoderConfig& cfg, const Point& value, const Point& z) {
    const Vec& v = std::get<Vec>(value);
    if (const Vec* zv = std::get_if<Vec>(&z); zv && zv->size() == v.size() && v.size() > 1) {
        Vec out = v;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += (*zv)[i];
        return out;
    }
    if (v.size() == 1) return Vec{v[0] + cfg.inc_quant->scalar_value(z)};
    throw DomainError("increment does not match path dimension");
}

// One quantization pass: symbols for x plus the decoded codeword path.
std::pair<Symbols, JumpPath> derive_symbols(const JumpPath& x, const CoderConfig& cfg) {
    Symbols sym;
    sym.k = x.jumps();
    if (sym.k > cfg.k_max)
        throw CapacityError("path has more jumps than the coder capacity k_max = " +
                            std::to_string(cfg.k_max));
    std::vector<double> that;
    if (sym.k >= 1) {
        auto [rank, rounded] = cfg.per_k[(std::size_t)sym.k - 1].positions.nearest(x.times);
        sym.pos_rank = std::move(rank);
        that = std::move(rounded);
    }
    std::vector<Point> vhat;
    switch (cfg.mode) {
        case CoderMode::Destinations:
            for (const Point& v : x.values) {
                auto [idx, nv] = cfg.value_net->nearest(v);
                sym.values.push_back(idx);
                vhat.push_back(std::move(nv));
            }
            break;
        case CoderMode::DiscreteExact:
            for (const Point& v : x.values) {
                sym.values.push_back((std::uint64_t)std::get<Label>(v));
                vhat.push_back(v);
            }
            break;
        case CoderMode::Increments: {
            vhat.push_back(cfg.initial_value);
            for (std::uint64_t i = 0; i < sym.k; ++i) {
                const Vec& a = std::get<Vec>(x.values[(std::size_t)i]);
                const Vec& b = std::get<Vec>(x.values[(std::size_t)i + 1]);
                Vec dz(a.size());
                for (std::size_t d = 0; d < a.size(); ++d) dz[d] = b[d] - a[d];
                auto [idx, z] = cfg.inc_quant->nearest(dz);
                sym.values.push_back(idx);
                vhat.push_back(incr_add(cfg, vhat.back(), z));
            }
            break;
        }
    }
    JumpPath decoded = collapse_path(std::move(that), std::move(vhat), cfg.path_space);
    return {std::move(sym), std::move(decoded)};
}

void write_symbols(BitWriter& w, const Symbols& sym, const CoderConfig& cfg) {
    w.push_gamma(sym.k + 1);
    if (sym.k >= 1) {
        const CoderPerK& pk = cfg.per_k[(std::size_t)sym.k - 1];
        if (pk.pos_width > 0) w.push_big(sym.pos_rank, pk.pos_width);
    }
    if (cfg.value_width > 0)
        for (std::uint64_t v : sym.values) w.push_bits(v, cfg.value_width);
}

}  // namespace

void encode_path(BitWriter& w, const JumpPath& x, const CoderConfig& cfg) {
    JumpPath cur = x;
    for (std::uint64_t pass = 0; pass <= cfg.k_max + 2; ++pass) {
        auto [sym, decoded] = derive_symbols(cur, cfg);
        if (path_equal(decoded, cur)) {
            write_symbols(w, sym, cfg);
            return;
        }
        cur = std::move(decoded);  // jump count shrinks whenever unstable
    }
    throw std::logic_error("encoder canonicalization did not converge");
}

JumpPath decode_path(BitReader& rd, const CoderConfig& cfg) {
    std::uint64_t kp1 = rd.read_gamma();
    std::uint64_t k = kp1 - 1;
    if (k > cfg.k_max) throw DecodeError("record jump count exceeds coder capacity");
    std::vector<double> times;
    if (k >= 1) {
        const CoderPerK& pk = cfg.per_k[(std::size_t)k - 1];
        BigUint rank = rd.read_big(pk.pos_width);
        if (!(rank < pk.positions.size)) throw DecodeError("position rank out of range");
        times = pk.positions.unrank(std::move(rank));
    }
    std::uint64_t nvals = cfg.mode == CoderMode::Increments ? k : k + 1;
    std::vector<Point> values;
    switch (cfg.mode) {
        case CoderMode::Destinations:
            for (std::uint64_t i = 0; i < nvals; ++i) {
                std::uint64_t idx = rd.read_bits(cfg.value_width);
                if (idx >= cfg.value_net->size) throw DecodeError("value index out of range");
                values.push_back(cfg.value_net->unrank(idx));
            }
            break;
        case CoderMode::DiscreteExact:
            for (std::uint64_t i = 0; i < nvals; ++i) {
                std::uint64_t idx = rd.read_bits(cfg.value_width);
                if (idx >= (std::uint64_t)cfg.path_space.q) throw DecodeError("label out of range");
                values.push_back((Label)idx);
            }
            break;
        case CoderMode::Increments: {
            values.push_back(cfg.initial_value);
            for (std::uint64_t i = 0; i < nvals; ++i) {
                std::uint64_t idx = rd.read_bits(cfg.value_width);
                if (idx >= cfg.inc_quant->size()) throw DecodeError("increment index out of range");
                values.push_back(incr_add(cfg, values.back(), cfg.inc_quant->unrank(idx)));
            }
            break;
        }
    }
    return collapse_path(std::move(times), std::move(values), cfg.path_space);
}

// ---------------------------------------------------------------- container

static constexpr std::uint8_t kMagic = 0x4A;
static constexpr std::uint8_t kVersion = 0x01;

std::string encode_container(const std::vector<JumpPath>& paths, const CoderConfig& cfg) {
    BitWriter w;
    for (const JumpPath& p : paths) encode_path(w, p, cfg);
    std::string out;
    out.push_back((char)kMagic);
    out.push_back((char)kVersion);
    for (unsigned i = 0; i < 8; ++i) out.push_back((char)((w.nbits >> (8 * i)) & 0xFF));
    out.append((const char*)w.bytes.data(), w.bytes.size());
    return out;
}

std::vector<JumpPath> decode_container(std::string_view bytes, const CoderConfig& cfg) {
    if (bytes.size() < 10) throw DecodeError("container shorter than its header");
    if ((std::uint8_t)bytes[0] != kMagic) throw DecodeError("bad container magic");
    if ((std::uint8_t)bytes[1] != kVersion) throw DecodeError("unsupported container version");
    std::uint64_t nbits = 0;
    for (unsigned i = 0; i < 8; ++i) nbits |= (std::uint64_t)(std::uint8_t)bytes[2 + i] << (8 * i);
    std::uint64_t payload = bytes.size() - 10;
    if ((nbits + 7) / 8 != payload) throw DecodeError("container payload length mismatch");
    BitReader rd{(const std::uint8_t*)bytes.data() + 10, nbits, 0};
    std::vector<JumpPath> out;
    while (rd.remaining() > 0) out.push_back(decode_path(rd, cfg));
    return out;
}

// --------------------------------------------------------------------- rate

double expected_rate_bound(const CoderConfig& cfg, double K) {
    double n;
    switch (cfg.mode) {
        case CoderMode::Destinations:
            n = (double)cfg.value_net->size;
            break;
        case CoderMode::DiscreteExact:
            n = (double)cfg.path_space.q;
            break;
        case CoderMode::Increments:
            n = (double)cfg.inc_quant->size();
            break;
        default:
            throw ConfigError("unknown coder mode");
    }
    return K * (cfg.r + (cfg.lambda + 1.0) * std::log(n));
}

EmpiricalRate empirical_rate(const std::vector<JumpPath>& paths, const CoderConfig& cfg) {
    if (paths.empty()) throw ConfigError("empirical_rate needs at least one path");
    KahanSum bits;
    std::map<std::string, std::uint64_t> freq;
    for (const JumpPath& p : paths) {
        BitWriter w;
        encode_path(w, p, cfg);
        bits.add((double)w.nbits);
        BitReader rd{w.bytes.data(), w.nbits, 0};
        ++freq[serialize_path(decode_path(rd, cfg))];
    }
    EmpiricalRate out;
    out.mean_bits = bits.value() / (double)paths.size();
    out.mean_nats = out.mean_bits * std::log(2.0);
    KahanSum h;
    double n = (double)paths.size();
    for (const auto& [key, c] : freq) {
        double p = (double)c / n;
        h.add(-p * std::log(p));
    }
    out.entropy_nats = h.value();
    return out;
}

double coder_error_envelope(const CoderConfig& cfg, double s) {
    if (!(s >= 1.0)) throw ConfigError("moment order must satisfy s >= 1");
    auto w = cfg.path_space.diameter();
    if (!w) throw FeasibilityError("error envelope needs a bounded value space");
    return 2.0 * *w * cfg.kappa_bar * std::pow(1.0 - std::exp(-cfg.lambda), 1.0 / s) *
           std::exp(-cfg.r / cfg.lambda);
}

}  // namespace jumpcode
