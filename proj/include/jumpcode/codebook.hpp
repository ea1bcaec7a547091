#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "jumpcode/bigint.hpp"
#include "jumpcode/path.hpp"
#include "jumpcode/sim.hpp"

namespace jumpcode {

// Grid codebooks for k sorted jump times in [0,1].
//   MidpointProduct: all k-tuples of odd multiples of 1/m (m odd), covering
//     radius 1/m in sup norm, size ((m+1)/2)^k.
//   OrderedGrid: nondecreasing k-tuples over {1/m,...,m/m}, size C(m+k-1,k),
//     covering radius 1/m on sorted inputs; ranked in colex order.
//   SingleCenter: the lone tuple (1/2,...,1/2), covering radius 1/2.
enum class PositionKind { MidpointProduct, OrderedGrid, SingleCenter };

struct PositionCodebook {
    PositionKind kind = PositionKind::SingleCenter;
    std::uint64_t k = 0;
    std::uint64_t m = 1;
    BigUint size{1};
    double log_size = 0.0;
    double worst_error = 0.5;  // sup-norm covering radius

    std::vector<double> unrank(BigUint rank) const;
    BigUint rank(const std::vector<double>& tuple) const;  // tuple must lie on the grid
    // Lowest-rank sup-norm minimizer for sorted input times.
    std::pair<BigUint, std::vector<double>> nearest(const std::vector<double>& times) const;
};

PositionCodebook midpoint_product_codebook(std::uint64_t k, std::uint64_t m);
PositionCodebook ordered_grid_codebook(std::uint64_t k, std::uint64_t m);
PositionCodebook single_center_codebook(std::uint64_t k);

// Midpoint family sized for log-cardinality <= r with covering radius
// <= e^{-r/k}; falls back to the single center when e^{r/k} < 2.
PositionCodebook position_codebook_for_rate(std::uint64_t k, double r);

// Largest ordered grid with ln C(m+k-1,k) <= r (+1e-9 float slack).
// FeasibilityError when even m = k does not fit, naming the c*(k) k floor.
PositionCodebook ordered_codebook_for_rate(std::uint64_t k, double r);

// c*(k) = log C(2k,k) / k: per-jump rate that always admits m >= k.
double ordered_cstar(std::uint64_t k);

// Witness kappa = k e^{r/k} / m for the selected grid; stays O(1).
double ordered_kappa_witness(std::uint64_t k, double r);

// Per-coordinate quantizer for jump increments: an eps-net of the increment
// space, or the trivial single point for deterministic increments.
struct IncrementQuantizer {
    bool point_mass = false;
    Point fixed;
    std::optional<EpsilonNet> net;

    std::uint64_t size() const { return point_mass ? 1 : net->size; }
    double log_size() const { return point_mass ? 0.0 : net->log_size; }
    // Raw increments arrive as Vec (cube or scalar); coordinates are clamped
    // into the increment space before lookup (float residue of path sums).
    std::pair<std::uint64_t, Point> nearest(const Point& raw) const;
    Point unrank(std::uint64_t i) const;
    // Scalar value used to accumulate 1-dim path values.
    double scalar_value(const Point& z) const;
};

IncrementQuantizer increment_quantizer(const IncrementLaw& law, double eps);

// Sound covering threshold: for all eps <= eps0_threshold(s, delta),
// log N(eps) <= (gamma + delta) log(1/eps). Snapped down to a dyadic 2^-j.
double eps0_threshold(const DistortionSpace& s, double delta);
// Empirical dyadic-scan diagnostic (largest 2^-j passing the scan).
double eps0_dyadic_scan(const DistortionSpace& s, double delta);

enum class CodebookMode { Destinations, Increments };

struct CompositeCell {
    std::uint64_t k = 0;
    PositionCodebook positions;                // k >= 1
    std::optional<EpsilonNet> net;             // Destinations: per-value net
    std::optional<IncrementQuantizer> incq;    // Increments: per-increment net
    std::uint64_t value_count = 0;             // k+1 values or k increments
    std::uint64_t per_coord = 1;               // net / quantizer size
    BigUint size{1};
    BigUint offset{0};
};

// Union over jump counts k = 0..k0 of (position grid) x (value product net).
// Hard invariant: log total <= (1 + gamma + delta) r + 1.
struct CompositePathCodebook {
    CodebookMode mode = CodebookMode::Destinations;
    DistortionSpace path_space;
    Point initial_value;  // Increments: deterministic start
    double r = 0, delta = 0, gamma = 0, eps0 = 0;
    std::uint64_t k0 = 0;
    std::vector<CompositeCell> cells;
    BigUint total_size{0};
    double log_total = 0.0;

    JumpPath decode(const BigUint& index) const;
    BigUint cell_index(const CompositeCell& cell, const BigUint& pos_rank,
                       const std::vector<std::uint64_t>& value_digits) const;
};

CompositePathCodebook composite_destinations_codebook(const DistortionSpace& space,
                                                      double r, double delta);
CompositePathCodebook composite_increments_codebook(const DistortionSpace& path_space,
                                                    const IncrementLaw& increments,
                                                    Point initial, double r, double delta);

struct NearestResult {
    BigUint index;
    double distortion = 0;
    JumpPath codeword;
};

// Exhaustive scan when the codebook has at most `exhaustive_cap` words;
// otherwise a documented shortlist: natural-cell rounding, greedy jump
// removal states, kept prefixes, and constant candidates.
NearestResult nearest_codeword(const CompositePathCodebook& cb, const JumpPath& x,
                               std::uint64_t exhaustive_cap = 100000);

}  // namespace jumpcode
