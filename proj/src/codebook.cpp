#include "jumpcode/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jumpcode/special.hpp"

namespace jumpcode {

static constexpr double kKappaCeiling = 30.7577;  // 8 e sqrt(2), conservative

// ---------------------------------------------------------------- positions

static double midpoint_value(std::uint64_t j, std::uint64_t m) {
    return (2.0 * (double)j + 1.0) / (double)m;  // j-th odd multiple of 1/m
}

PositionCodebook midpoint_product_codebook(std::uint64_t k, std::uint64_t m) {
    if (k < 1) throw ConfigError("position codebook needs k >= 1");
    if (m < 1 || m % 2 == 0) throw ConfigError("midpoint grid needs odd m");
    PositionCodebook cb;
    cb.kind = PositionKind::MidpointProduct;
    cb.k = k;
    cb.m = m;
    std::uint64_t n = (m + 1) / 2;
    cb.size = BigUint(1);
    for (std::uint64_t i = 0; i < k; ++i) cb.size.mul_u64(n);
    cb.log_size = (double)k * std::log((double)n);
    cb.worst_error = 1.0 / (double)m;
    return cb;
}

PositionCodebook ordered_grid_codebook(std::uint64_t k, std::uint64_t m) {
    if (k < 1) throw ConfigError("position codebook needs k >= 1");
    if (m < 1) throw ConfigError("ordered grid needs m >= 1");
    PositionCodebook cb;
    cb.kind = PositionKind::OrderedGrid;
    cb.k = k;
    cb.m = m;
    cb.size = BigUint::binomial(m + k - 1, k);
    cb.log_size = cb.size.log();
    cb.worst_error = 1.0 / (double)m;
    return cb;
}

PositionCodebook single_center_codebook(std::uint64_t k) {
    if (k < 1) throw ConfigError("position codebook needs k >= 1");
    PositionCodebook cb;
    cb.kind = PositionKind::SingleCenter;
    cb.k = k;
    cb.m = 1;
    cb.size = BigUint(1);
    cb.log_size = 0.0;
    cb.worst_error = 0.5;
    return cb;
}

// Grids saturate at 2^52 points per coordinate (m = 2^53 - 1): spacing
// 1/m ~ 1.1e-16 is one ulp of [0,1], so a finer grid has no distinct
// double codewords, and x*m stays below 2^53 where snapping arithmetic
// is exact. Saturated books under-spend their rate budget; worst_error
// records the representable spacing, not e^{-r/k}.
static constexpr std::uint64_t kMidpointSaturation = 1ull << 52;

PositionCodebook position_codebook_for_rate(std::uint64_t k, double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("rate must be finite and >= 0");
    if (k < 1) throw ConfigError("position codebook needs k >= 1");
    double u = std::exp(r / (double)k);
    std::uint64_t n = u >= (double)kMidpointSaturation ? kMidpointSaturation
                                                       : (std::uint64_t)std::floor(u + 1e-12);
    // n^k <= e^r; covering radius 1/(2n-1) <= e^{-r/k} for n >= 2, else the
    // single center with radius 1/2 <= e^{-r/k} (since e^{r/k} < 2).
    if (n < 2) return single_center_codebook(k);
    return midpoint_product_codebook(k, 2 * n - 1);
}

PositionCodebook ordered_codebook_for_rate(std::uint64_t k, double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("rate must be finite and >= 0");
    if (k < 1) throw ConfigError("position codebook needs k >= 1");
    // Largest m with ln C(m+k-1, k) <= r (+ slack for exact-integer boundaries).
    const double budget = r + 1e-9;
    std::uint64_t lo = 1, hi = (std::uint64_t)4.6e18;
    if (log_binomial(hi + k - 1, k) <= budget) throw CapacityError("ordered grid exceeds 64-bit range");
    if (log_binomial(k, k) > budget) {
        // not even m = 1 fits: cannot happen since C(k,k) = 1, ln = 0 <= budget
        throw FeasibilityError("ordered grid infeasible");
    }
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (log_binomial(mid + k - 1, k) <= budget)
            lo = mid;
        else
            hi = mid - 1;
    }
    std::uint64_t m = lo;
    if (m < k)
        throw FeasibilityError("rate below the ordered-grid floor c*(k) k = " +
                               std::to_string(ordered_cstar(k) * (double)k) + " nats for k = " +
                               std::to_string(k));
    PositionCodebook cb = ordered_grid_codebook(k, m);
    // The search compares a float log; the grid's exact BigUint log is the
    // authority on the budget, so trim any overshoot.
    for (int guard = 0; cb.log_size > budget; ++guard) {
        if (cb.m <= k)
            throw FeasibilityError("rate below the ordered-grid floor c*(k) k = " +
                                   std::to_string(ordered_cstar(k) * (double)k) + " nats for k = " +
                                   std::to_string(k));
        if (guard >= 64) throw std::logic_error("ordered grid search failed to meet its budget");
        cb = ordered_grid_codebook(k, cb.m - 1);
    }
    double kappa = (double)k * std::exp(r / (double)k) / (double)cb.m;
    if (kappa > kKappaCeiling)
        throw std::logic_error("ordered grid witness kappa exceeded its ceiling");
    return cb;
}

double ordered_cstar(std::uint64_t k) {
    if (k < 1) throw ConfigError("c* needs k >= 1");
    return log_binomial(2 * k, k) / (double)k;
}

double ordered_kappa_witness(std::uint64_t k, double r) {
    PositionCodebook cb = ordered_codebook_for_rate(k, r);
    return (double)k * std::exp(r / (double)k) / (double)cb.m;
}

std::vector<double> PositionCodebook::unrank(BigUint rank) const {
    if (!(rank < size)) throw DomainError("position rank out of range");
    std::vector<double> t((std::size_t)k);
    switch (kind) {
        case PositionKind::SingleCenter: {
            std::fill(t.begin(), t.end(), 0.5);
            return t;
        }
        case PositionKind::MidpointProduct: {
            std::uint64_t n = (m + 1) / 2;
            for (std::size_t i = k; i-- > 0;) {
                std::uint64_t d = rank.divmod_u64(n);
                t[i] = midpoint_value(d, m);
            }
            return t;
        }
        case PositionKind::OrderedGrid: {
            // colex: rank = sum_i C(z_i - 1, i), z strictly increasing.
            for (std::uint64_t i = k; i >= 1; --i) {
                std::uint64_t zlo = i, zhi = m + k - 1;
                while (zlo < zhi) {
                    std::uint64_t mid = zlo + (zhi - zlo + 1) / 2;
                    if (BigUint::binomial(mid - 1, i) <= rank)
                        zlo = mid;
                    else
                        zhi = mid - 1;
                }
                rank.sub(BigUint::binomial(zlo - 1, i));
                std::uint64_t y = zlo - (i - 1);
                t[(std::size_t)i - 1] = (double)y / (double)m;
            }
            return t;
        }
    }
    throw DomainError("unknown position kind");
}

BigUint PositionCodebook::rank(const std::vector<double>& tuple) const {
    if (tuple.size() != k) throw DomainError("position tuple has wrong arity");
    auto grid_index = [&](double t, double scale) {
        double y = t * scale;
        std::uint64_t yi = (std::uint64_t)std::llround(y);
        if (std::fabs(y - (double)yi) > 1e-6) throw DomainError("tuple is not on the grid");
        return yi;
    };
    switch (kind) {
        case PositionKind::SingleCenter:
            for (double t : tuple)
                if (t != 0.5) throw DomainError("tuple is not on the grid");
            return BigUint(0);
        case PositionKind::MidpointProduct: {
            std::uint64_t n = (m + 1) / 2;
            BigUint r;
            for (double t : tuple) {
                std::uint64_t y = grid_index(t, (double)m);
                if (y % 2 == 0 || y > m) throw DomainError("tuple is not on the midpoint grid");
                r.mul_u64(n);
                r.add(BigUint((y - 1) / 2));
            }
            return r;
        }
        case PositionKind::OrderedGrid: {
            BigUint r;
            std::uint64_t prev = 0;
            for (std::uint64_t i = 1; i <= k; ++i) {
                std::uint64_t y = grid_index(tuple[(std::size_t)i - 1], (double)m);
                if (y < 1 || y > m || y < prev) throw DomainError("tuple is not an ordered grid word");
                prev = y;
                r.add(BigUint::binomial(y + i - 2, i));  // C(z_i - 1, i), z_i = y + i - 1
            }
            return r;
        }
    }
    throw DomainError("unknown position kind");
}

std::pair<BigUint, std::vector<double>> PositionCodebook::nearest(
    const std::vector<double>& times) const {
    if (times.size() != k) throw DomainError("position nearest needs k times");
    std::vector<double> t((std::size_t)k);
    switch (kind) {
        case PositionKind::SingleCenter:
            std::fill(t.begin(), t.end(), 0.5);
            return {BigUint(0), t};
        case PositionKind::MidpointProduct: {
            // Rank accumulated from the snapped digits directly: at saturated
            // m the value t[i] is within one ulp of several grid words, so a
            // rank(t) round trip could not recover j.
            std::uint64_t n = (m + 1) / 2;
            BigUint rk;
            for (std::size_t i = 0; i < k; ++i) {
                double x = times[i];
                std::uint64_t j = std::min<std::uint64_t>(
                    (std::uint64_t)std::max(0.0, std::floor(x * (double)m / 2.0)), n - 1);
                if (j > 0 &&
                    std::fabs(x - midpoint_value(j - 1, m)) <= std::fabs(x - midpoint_value(j, m)))
                    --j;
                if (j + 1 < n &&
                    std::fabs(x - midpoint_value(j + 1, m)) < std::fabs(x - midpoint_value(j, m)))
                    ++j;
                t[i] = midpoint_value(j, m);
                rk.mul_u64(n);
                rk.add(BigUint(j));
            }
            return {std::move(rk), t};
        }
        case PositionKind::OrderedGrid: {
            for (std::size_t i = 0; i < k; ++i) {
                double x = times[i];
                double ym = std::floor(x * (double)m);
                std::uint64_t y = ym < 1.0 ? 1 : std::min((std::uint64_t)ym, m);
                // candidates y and y+1; ties toward the smaller grid point
                if (y < m && std::fabs(x - (double)(y + 1) / (double)m) < std::fabs(x - (double)y / (double)m))
                    ++y;
                t[i] = (double)y / (double)m;
            }
            // rounding a sorted input is sorted
            return {rank(t), t};
        }
    }
    throw DomainError("unknown position kind");
}

// --------------------------------------------------------------- increments

IncrementQuantizer increment_quantizer(const IncrementLaw& law, double eps) {
    IncrementQuantizer q;
    if (law.kind == IncrementKind::PointMass) {
        q.point_mass = true;
        q.fixed = law.fixed;
        return q;
    }
    q.net = EpsilonNet::build(law.space, eps);
    return q;
}

std::pair<std::uint64_t, Point> IncrementQuantizer::nearest(const Point& raw) const {
    if (point_mass) return {0, fixed};
    const DistortionSpace& s = net->space;
    if (s.kind == SpaceKind::CantorSet) {
        if (const Ternary* t = std::get_if<Ternary>(&raw)) return net->nearest(*t);
        const Vec& v = std::get<Vec>(raw);
        if (v.size() != 1) throw DomainError("cantor increment must be scalar");
        return net->nearest_cantor_value(std::clamp(v[0], 0.0, 1.0));
    }
    // cube: clamp float residue of path-sum differences back into [0,1]
    Vec v = std::get<Vec>(raw);
    for (double& x : v) x = std::clamp(x, 0.0, 1.0);
    return net->nearest(v);
}

Point IncrementQuantizer::unrank(std::uint64_t i) const {
    if (point_mass) {
        if (i != 0) throw DomainError("point-mass increment index out of range");
        return fixed;
    }
    return net->unrank(i);
}

double IncrementQuantizer::scalar_value(const Point& z) const {
    if (const Ternary* t = std::get_if<Ternary>(&z)) return ternary_value(*t);
    const Vec& v = std::get<Vec>(z);
    if (v.size() != 1) throw DomainError("scalar increment must be 1-dim");
    return v[0];
}

// ------------------------------------------------------------- eps0 / cells

static void check_delta(double delta) {
    if (!(delta >= 0.05 && delta <= 8.0)) throw ConfigError("delta must lie in [0.05, 8]");
}

double eps0_threshold(const DistortionSpace& s, double delta) {
    check_delta(delta);
    double raw;
    switch (s.kind) {
        case SpaceKind::UnitCube:
            // ceil(1/(2 eps)) <= 1/eps for eps <= 1/2, so N <= eps^-d.
            raw = 0.5;
            break;
        case SpaceKind::FiniteDiscrete:
            // N <= q always; q <= eps^-delta iff eps <= q^{-1/delta}.
            raw = std::min(0.5, std::pow((double)s.q, -1.0 / delta));
            break;
        case SpaceKind::CantorSet:
            // Level l >= 1 + log2/(delta log3) makes l log2 <= (gamma+delta)(l-1) log3.
            raw = std::min(0.5, std::pow(3.0, -(1.0 + std::log(2.0) / (delta * std::log(3.0)))));
            break;
        default:
            throw ConfigError("covering threshold needs a bounded space");
    }
    int j = (int)std::ceil(-std::log2(raw) - 1e-12);
    if (j < 1) j = 1;
    double e = std::ldexp(1.0, -j);
    if (e > raw * (1.0 + 1e-12)) e = std::ldexp(1.0, -(j + 1));
    return e;
}

double eps0_dyadic_scan(const DistortionSpace& s, double delta) {
    check_delta(delta);
    double gd = s.covering_exponent() + delta;
    for (int j = 1; j <= 40; ++j) {
        bool ok = true;
        for (int i = j; i <= 40 && ok; ++i) {
            double eps = std::ldexp(1.0, -i);
            if (log_covering_number(s, eps) > gd * (double)i * std::log(2.0) + 1e-9) ok = false;
        }
        if (ok) return std::ldexp(1.0, -j);
    }
    return std::ldexp(1.0, -40);
}

static std::uint64_t composite_k0(double r, double eps0) {
    double scale = std::min(1.0, 1.0 / std::log(1.0 / eps0));
    double v = r * scale - 1.0 + 1e-12;
    if (v < 0.0) throw FeasibilityError("rate below the composite floor max(1, log(1/eps0))");
    return (std::uint64_t)std::floor(v);
}

static void composite_finalize(CompositePathCodebook& cb) {
    BigUint off(0);
    for (CompositeCell& cell : cb.cells) {
        cell.offset = off;
        BigUint next = off;
        next.add(cell.size);
        off = next;
    }
    cb.total_size = off;
    cb.log_total = cb.total_size.log();
    double cap = (1.0 + cb.gamma + cb.delta) * cb.r + 1.0;
    if (cb.log_total > cap + 1e-9)
        throw std::logic_error("composite codebook exceeded its log-size budget");
}

CompositePathCodebook composite_destinations_codebook(const DistortionSpace& space, double r,
                                                      double delta) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("rate must be positive and finite");
    if (!space.bounded()) throw FeasibilityError("destination codebooks need a bounded value space");
    CompositePathCodebook cb;
    cb.mode = CodebookMode::Destinations;
    cb.path_space = space;
    cb.r = r;
    cb.delta = delta;
    cb.gamma = space.covering_exponent();
    cb.eps0 = eps0_threshold(space, delta);
    if (r < std::max(1.0, std::log(1.0 / cb.eps0)) - 1e-12)
        throw FeasibilityError("rate below the composite floor max(1, log(1/eps0))");
    cb.k0 = composite_k0(r, cb.eps0);
    for (std::uint64_t k = 0; k <= cb.k0; ++k) {
        CompositeCell cell;
        cell.k = k;
        cell.net = EpsilonNet::build(space, std::exp(-r / (double)(k + 1)));
        cell.value_count = k + 1;
        cell.per_coord = cell.net->size;
        if (k >= 1) cell.positions = position_codebook_for_rate(k, r - (double)k);
        cell.size = k >= 1 ? cell.positions.size : BigUint(1);
        for (std::uint64_t i = 0; i < cell.value_count; ++i) cell.size.mul_u64(cell.per_coord);
        cb.cells.push_back(std::move(cell));
    }
    composite_finalize(cb);
    return cb;
}

CompositePathCodebook composite_increments_codebook(const DistortionSpace& path_space,
                                                    const IncrementLaw& increments, Point initial,
                                                    double r, double delta) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("rate must be positive and finite");
    if (path_space.kind != SpaceKind::RealVector)
        throw ConfigError("increment codebooks describe vector-valued paths");
    path_space.validate_point(initial);
    CompositePathCodebook cb;
    cb.mode = CodebookMode::Increments;
    cb.path_space = path_space;
    cb.initial_value = std::move(initial);
    cb.r = r;
    cb.delta = delta;
    bool pm = increments.kind == IncrementKind::PointMass;
    cb.gamma = pm ? 0.0 : increments.space.covering_exponent();
    cb.eps0 = pm ? 0.5 : eps0_threshold(increments.space, delta);
    if (r < std::max(1.0, std::log(1.0 / cb.eps0)) - 1e-12)
        throw FeasibilityError("rate below the composite floor max(1, log(1/eps0))");
    cb.k0 = composite_k0(r, cb.eps0);
    for (std::uint64_t k = 0; k <= cb.k0; ++k) {
        CompositeCell cell;
        cell.k = k;
        cell.value_count = k;
        if (k >= 1) {
            cell.incq = increment_quantizer(increments, std::exp(-r / (double)k));
            cell.per_coord = cell.incq->size();
            cell.positions = position_codebook_for_rate(k, r - (double)k);
            cell.size = cell.positions.size;
            for (std::uint64_t i = 0; i < k; ++i) cell.size.mul_u64(cell.per_coord);
        } else {
            cell.size = BigUint(1);
        }
        cb.cells.push_back(std::move(cell));
    }
    composite_finalize(cb);
    return cb;
}

BigUint CompositePathCodebook::cell_index(const CompositeCell& cell, const BigUint& pos_rank,
                                          const std::vector<std::uint64_t>& value_digits) const {
    if (value_digits.size() != cell.value_count) throw DomainError("wrong value digit count");
    BigUint idx = pos_rank;
    for (std::uint64_t d : value_digits) {
        if (d >= cell.per_coord) throw DomainError("value digit out of range");
        idx.mul_u64(cell.per_coord);
        idx.add(BigUint(d));
    }
    idx.add(cell.offset);
    return idx;
}

static Point add_increment(const Point& value, const IncrementQuantizer& q, const Point& z) {
    const Vec& v = std::get<Vec>(value);
    if (const Vec* zv = std::get_if<Vec>(&z); zv && zv->size() == v.size() && v.size() > 1) {
        Vec out = v;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += (*zv)[i];
        return out;
    }
    if (v.size() == 1) return Vec{v[0] + q.scalar_value(z)};
    // dimension mismatch: vector path with non-vector increment
    throw DomainError("increment does not match path dimension");
}

JumpPath CompositePathCodebook::decode(const BigUint& index) const {
    if (!(index < total_size)) throw DomainError("codebook index out of range");
    const CompositeCell* cell = nullptr;
    for (const CompositeCell& c : cells) {
        BigUint end = c.offset;
        end.add(c.size);
        if (!(index < c.offset) && index < end) {
            cell = &c;
            break;
        }
    }
    if (!cell) throw DomainError("codebook index out of range");
    BigUint local = index;
    local.sub(cell->offset);
    std::vector<std::uint64_t> digits((std::size_t)cell->value_count);
    for (std::size_t i = digits.size(); i-- > 0;) digits[i] = local.divmod_u64(cell->per_coord);
    std::vector<double> times =
        cell->k >= 1 ? cell->positions.unrank(local) : std::vector<double>{};
    // Product position cells count every tuple, sorted or not; decode
    // canonicalizes by time (stable) so every index yields a valid path.
    std::vector<std::size_t> ord(times.size());
    for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    std::stable_sort(ord.begin(), ord.end(),
                     [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
    std::vector<double> sorted_times(times.size());
    for (std::size_t i = 0; i < ord.size(); ++i) sorted_times[i] = times[ord[i]];

    std::vector<Point> values;
    if (mode == CodebookMode::Destinations) {
        values.reserve(digits.size());
        values.push_back(cell->net->unrank(digits[0]));
        for (std::size_t i = 0; i < ord.size(); ++i)
            values.push_back(cell->net->unrank(digits[ord[i] + 1]));
    } else {
        values.reserve(cell->k + 1);
        values.push_back(initial_value);
        for (std::size_t i = 0; i < ord.size(); ++i) {
            Point z = cell->incq->unrank(digits[ord[i]]);
            values.push_back(add_increment(values.back(), *cell->incq, z));
        }
    }
    return collapse_path(std::move(sorted_times), std::move(values), path_space);
}

// ----------------------------------------------------------------- nearest

namespace {

struct RawState {
    std::vector<double> times;
    std::vector<Point> values;
};

// Encode a raw state into the cell matching its jump count, decode the true
// codeword, and measure it against x.
void consider_state(const CompositePathCodebook& cb, const JumpPath& x, const RawState& st,
                    NearestResult& best, bool& has_best) {
    std::uint64_t k = st.times.size();
    if (k > cb.k0) return;
    const CompositeCell& cell = cb.cells[(std::size_t)k];
    BigUint pos_rank(0);
    if (k >= 1) pos_rank = cell.positions.nearest(st.times).first;
    std::vector<std::uint64_t> digits;
    digits.reserve((std::size_t)cell.value_count);
    if (cb.mode == CodebookMode::Destinations) {
        for (const Point& v : st.values) digits.push_back(cell.net->nearest(v).first);
    } else {
        for (std::uint64_t i = 0; i < k; ++i) {
            const Vec& a = std::get<Vec>(st.values[(std::size_t)i]);
            const Vec& b = std::get<Vec>(st.values[(std::size_t)i + 1]);
            Vec dz(a.size());
            for (std::size_t d = 0; d < a.size(); ++d) dz[d] = b[d] - a[d];
            digits.push_back(cell.incq->nearest(dz).first);
        }
    }
    BigUint idx = cb.cell_index(cell, pos_rank, digits);
    JumpPath cw = cb.decode(idx);
    double dist = path_distortion(x, cw, cb.path_space);
    if (!has_best || dist < best.distortion ||
        (dist == best.distortion && idx < best.index)) {
        best = NearestResult{std::move(idx), dist, std::move(cw)};
        has_best = true;
    }
}

}  // namespace

NearestResult nearest_codeword(const CompositePathCodebook& cb, const JumpPath& x,
                               std::uint64_t exhaustive_cap) {
    cb.path_space.validate_point(x.values[0]);
    NearestResult best;
    bool has_best = false;

    if (cb.total_size <= BigUint(exhaustive_cap)) {
        std::uint64_t n = cb.total_size.to_u64_saturating();
        for (std::uint64_t i = 0; i < n; ++i) {
            BigUint idx(i);
            JumpPath cw = cb.decode(idx);
            double dist = path_distortion(x, cw, cb.path_space);
            if (!has_best || dist < best.distortion) {
                best = NearestResult{std::move(idx), dist, std::move(cw)};
                has_best = true;
            }
        }
        return best;
    }

    std::uint64_t j = x.jumps();
    std::uint64_t top = std::min<std::uint64_t>(j, cb.k0);
    std::uint64_t span = 8;
    std::uint64_t lowest = top > span ? top - span : 0;

    // kept prefixes: first k' jumps, tail value extended
    for (std::uint64_t kp = lowest; kp <= top; ++kp) {
        RawState st;
        st.times.assign(x.times.begin(), x.times.begin() + (std::ptrdiff_t)kp);
        st.values.assign(x.values.begin(), x.values.begin() + (std::ptrdiff_t)kp + 1);
        consider_state(cb, x, st, best, has_best);
    }

    // greedy removal chain: repeatedly drop the jump with the cheapest local cost
    {
        RawState st{x.times, x.values};
        std::uint64_t recorded = 0;
        while (true) {
            if (st.times.size() <= cb.k0 && st.times.size() < lowest) break;
            if (st.times.size() <= cb.k0) {
                consider_state(cb, x, st, best, has_best);
                if (++recorded > span) break;
            }
            if (st.times.empty()) break;
            std::size_t bi = 0;
            double bc = 0;
            for (std::size_t i = 0; i < st.times.size(); ++i) {
                double next = i + 1 < st.times.size() ? st.times[i + 1] : 1.0;
                double c = cb.path_space.distortion(st.values[i + 1], st.values[i]) *
                           (next - st.times[i]);
                if (i == 0 || c < bc) {
                    bc = c;
                    bi = i;
                }
            }
            st.times.erase(st.times.begin() + (std::ptrdiff_t)bi);
            st.values.erase(st.values.begin() + (std::ptrdiff_t)bi + 1);
            JumpPath collapsed = collapse_path(st.times, st.values, cb.path_space);
            st.times = collapsed.times;
            st.values = collapsed.values;
        }
    }

    // constants
    if (cb.mode == CodebookMode::Destinations) {
        for (const Point& v : x.values) {
            RawState st;
            st.values.push_back(v);
            consider_state(cb, x, st, best, has_best);
        }
    } else {
        RawState st;
        st.values.push_back(cb.initial_value);
        consider_state(cb, x, st, best, has_best);
    }

    if (!has_best) throw std::logic_error("nearest_codeword produced no candidates");
    return best;
}

}  // namespace jumpcode
