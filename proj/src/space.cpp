#include "jumpcode/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "jumpcode/util.hpp"

namespace jumpcode {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double_strict(const std::string& s) {
    if (s.empty()) throw DomainError("empty number");
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw DomainError("bad number: " + s);
    return v;
}

long long parse_int_strict(const std::string& s) {
    if (s.empty()) throw DomainError("empty integer");
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) throw DomainError("bad integer: " + s);
    return v;
}

bool point_equal(const Point& a, const Point& b) {
    return a == b;  // exact: labels, coordinate doubles, digit strings
}

double ternary_value(const Ternary& t) {
    double v = 0.0, p = 1.0;
    for (char c : t) {
        p /= 3.0;
        if (c == '2')
            v += 2.0 * p;
        else if (c != '0')
            throw DomainError("ternary digit must be '0' or '2'");
    }
    return v;
}

void DistortionSpace::validate_point(const Point& p) const {
    switch (kind) {
        case SpaceKind::FiniteDiscrete: {
            const Label* l = std::get_if<Label>(&p);
            if (!l || *l < 0 || *l >= q) throw DomainError("label outside alphabet");
            return;
        }
        case SpaceKind::UnitCube: {
            const Vec* v = std::get_if<Vec>(&p);
            if (!v || (int)v->size() != dim) throw DomainError("point is not a dim-vector");
            for (double x : *v)
                if (!(x >= 0.0 && x <= 1.0)) throw DomainError("coordinate outside [0,1]");
            return;
        }
        case SpaceKind::RealVector: {
            const Vec* v = std::get_if<Vec>(&p);
            if (!v || (int)v->size() != dim) throw DomainError("point is not a dim-vector");
            for (double x : *v)
                if (!std::isfinite(x)) throw DomainError("coordinate not finite");
            return;
        }
        case SpaceKind::CantorSet: {
            const Ternary* t = std::get_if<Ternary>(&p);
            if (!t || (int)t->size() != depth) throw DomainError("digit string length mismatch");
            for (char c : *t)
                if (c != '0' && c != '2') throw DomainError("ternary digit must be '0' or '2'");
            return;
        }
    }
    throw DomainError("unknown space kind");
}

double DistortionSpace::distortion(const Point& a, const Point& b) const {
    validate_point(a);
    validate_point(b);
    switch (kind) {
        case SpaceKind::FiniteDiscrete:
            return matrix[(std::size_t)std::get<Label>(a) * q + (std::size_t)std::get<Label>(b)];
        case SpaceKind::UnitCube:
        case SpaceKind::RealVector: {
            const Vec& x = std::get<Vec>(a);
            const Vec& y = std::get<Vec>(b);
            double m = 0.0;
            for (int i = 0; i < dim; ++i) m = std::max(m, std::fabs(x[i] - y[i]));
            return m;
        }
        case SpaceKind::CantorSet:
            return std::fabs(ternary_value(std::get<Ternary>(a)) - ternary_value(std::get<Ternary>(b)));
    }
    throw DomainError("unknown space kind");
}

std::optional<double> DistortionSpace::diameter() const {
    switch (kind) {
        case SpaceKind::FiniteDiscrete: {
            double m = 0.0;
            for (double d : matrix) m = std::max(m, d);
            return m;
        }
        case SpaceKind::UnitCube:
        case SpaceKind::CantorSet:
            return 1.0;
        case SpaceKind::RealVector:
            return std::nullopt;
    }
    return std::nullopt;
}

double DistortionSpace::covering_exponent() const {
    switch (kind) {
        case SpaceKind::FiniteDiscrete:
            return 0.0;
        case SpaceKind::UnitCube:
            return (double)dim;
        case SpaceKind::CantorSet:
            return std::log(2.0) / std::log(3.0);
        case SpaceKind::RealVector:
            return (double)dim;  // local exponent; no finite covers exist
    }
    return 0.0;
}

DistortionSpace finite_discrete_space(int q, std::vector<double> matrix) {
    if (q < 1) throw ConfigError("finite space needs q >= 1");
    if ((int)matrix.size() != q * q) throw ConfigError("distortion matrix must be q*q");
    for (int i = 0; i < q; ++i) {
        if (matrix[(std::size_t)i * q + i] != 0.0) throw ConfigError("matrix diagonal must be zero");
        for (int j = 0; j < q; ++j) {
            double d = matrix[(std::size_t)i * q + j];
            if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("matrix entries must be finite and nonnegative");
            if (d != matrix[(std::size_t)j * q + i]) throw ConfigError("matrix must be symmetric");
        }
    }
    DistortionSpace s;
    s.kind = SpaceKind::FiniteDiscrete;
    s.q = q;
    s.matrix = std::move(matrix);
    s.triangle = true;
    for (int i = 0; i < q && s.triangle; ++i)
        for (int j = 0; j < q && s.triangle; ++j)
            for (int k = 0; k < q; ++k)
                if (s.matrix[(std::size_t)i * q + j] >
                    s.matrix[(std::size_t)i * q + k] + s.matrix[(std::size_t)k * q + j] + 1e-15) {
                    s.triangle = false;
                    break;
                }
    return s;
}

DistortionSpace uniform_discrete_space(int q) {
    std::vector<double> m((std::size_t)q * q, 1.0);
    for (int i = 0; i < q; ++i) m[(std::size_t)i * q + i] = 0.0;
    return finite_discrete_space(q, std::move(m));
}

DistortionSpace two_point_space() { return uniform_discrete_space(2); }

DistortionSpace unit_cube_space(int dim) {
    if (dim < 1) throw ConfigError("unit cube needs dim >= 1");
    DistortionSpace s;
    s.kind = SpaceKind::UnitCube;
    s.dim = dim;
    return s;
}

DistortionSpace cantor_space(int depth) {
    if (depth < 1 || depth > 40) throw ConfigError("cantor depth must be in [1,40]");
    DistortionSpace s;
    s.kind = SpaceKind::CantorSet;
    s.depth = depth;
    return s;
}

DistortionSpace real_vector_space(int dim) {
    if (dim < 1) throw ConfigError("real vector space needs dim >= 1");
    DistortionSpace s;
    s.kind = SpaceKind::RealVector;
    s.dim = dim;
    return s;
}

double min_positive_distance(const DistortionSpace& s) {
    if (s.kind != SpaceKind::FiniteDiscrete) throw ConfigError("min_positive_distance needs a finite space");
    double m = std::numeric_limits<double>::infinity();
    for (double d : s.matrix)
        if (d > 0.0) m = std::min(m, d);
    return m;
}

// Smallest l in [0, depth] with 3^-l <= eps (clamped at depth).
static int cantor_level_for(double eps, int depth) {
    if (eps >= 1.0) return 0;
    int l = (int)std::ceil(std::log(1.0 / eps) / std::log(3.0) - 1e-12);
    if (l < 0) l = 0;
    while (l > 0 && std::pow(3.0, -(double)(l - 1)) <= eps) --l;
    while (l < depth && std::pow(3.0, -(double)l) > eps) ++l;
    return l;
}

EpsilonNet EpsilonNet::build(const DistortionSpace& s, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("net radius must be positive");
    EpsilonNet n;
    n.space = s;
    n.eps = eps;
    switch (s.kind) {
        case SpaceKind::RealVector:
            throw FeasibilityError("unbounded space has no finite eps-cover");
        case SpaceKind::FiniteDiscrete: {
            std::vector<bool> covered((std::size_t)s.q, false);
            for (int i = 0; i < s.q; ++i) {
                if (covered[(std::size_t)i]) continue;
                n.centers.push_back(i);
                for (int j = 0; j < s.q; ++j)
                    if (s.matrix[(std::size_t)i * s.q + j] <= eps) covered[(std::size_t)j] = true;
            }
            n.size = n.centers.size();
            n.log_size = std::log((double)n.size);
            return n;
        }
        case SpaceKind::UnitCube: {
            n.cube_g = (std::uint64_t)std::ceil(1.0 / (2.0 * eps) - 1e-12);
            if (n.cube_g < 1) n.cube_g = 1;
            double bits = s.dim * std::log2((double)n.cube_g);
            if (bits > 62.0) throw CapacityError("cube net too large for 64-bit indexing");
            n.size = 1;
            for (int i = 0; i < s.dim; ++i) n.size *= n.cube_g;
            n.log_size = s.dim * std::log((double)n.cube_g);
            return n;
        }
        case SpaceKind::CantorSet: {
            n.cantor_level = cantor_level_for(eps, s.depth);
            n.size = (std::uint64_t)1 << n.cantor_level;
            n.log_size = n.cantor_level * std::log(2.0);
            return n;
        }
    }
    throw ConfigError("unknown space kind");
}

Point EpsilonNet::unrank(std::uint64_t i) const {
    if (i >= size) throw DomainError("net index out of range");
    switch (space.kind) {
        case SpaceKind::FiniteDiscrete:
            return centers[i];
        case SpaceKind::UnitCube: {
            Vec v((std::size_t)space.dim);
            for (int a = space.dim; a-- > 0;) {
                std::uint64_t j = i % cube_g;
                i /= cube_g;
                v[(std::size_t)a] = (2.0 * (double)j + 1.0) / (2.0 * (double)cube_g);
            }
            return v;
        }
        case SpaceKind::CantorSet: {
            Ternary t((std::size_t)space.depth, '0');
            for (int b = 0; b < cantor_level; ++b)
                if ((i >> (cantor_level - 1 - b)) & 1u) t[(std::size_t)b] = '2';
            return t;
        }
        default:
            throw DomainError("net unrank: unsupported space");
    }
}

std::pair<std::uint64_t, Point> EpsilonNet::nearest(const Point& p) const {
    space.validate_point(p);
    switch (space.kind) {
        case SpaceKind::FiniteDiscrete: {
            std::uint64_t best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (std::uint64_t i = 0; i < centers.size(); ++i) {
                double d = space.matrix[(std::size_t)centers[i] * space.q + std::get<Label>(p)];
                if (d < bd) {
                    bd = d;
                    best = i;
                }
            }
            return {best, centers[best]};
        }
        case SpaceKind::UnitCube: {
            const Vec& x = std::get<Vec>(p);
            std::uint64_t idx = 0;
            Vec c((std::size_t)space.dim);
            double g = (double)cube_g;
            for (int a = 0; a < space.dim; ++a) {
                double xa = x[(std::size_t)a];
                std::uint64_t j = std::min<std::uint64_t>((std::uint64_t)std::max(0.0, std::floor(xa * g)), cube_g - 1);
                // dead-center ties go to the lower cell
                if (j > 0) {
                    double lo = (2.0 * (double)(j - 1) + 1.0) / (2.0 * g);
                    double hi = (2.0 * (double)j + 1.0) / (2.0 * g);
                    if (std::fabs(xa - lo) <= std::fabs(xa - hi)) --j;
                }
                idx = idx * cube_g + j;
                c[(std::size_t)a] = (2.0 * (double)j + 1.0) / (2.0 * g);
            }
            return {idx, c};
        }
        case SpaceKind::CantorSet: {
            const Ternary& t = std::get<Ternary>(p);
            std::uint64_t idx = 0;
            Ternary c((std::size_t)space.depth, '0');
            for (int b = 0; b < cantor_level; ++b) {
                bool two = t[(std::size_t)b] == '2';
                idx = (idx << 1) | (two ? 1u : 0u);
                if (two) c[(std::size_t)b] = '2';
            }
            return {idx, c};
        }
        default:
            throw DomainError("net nearest: unsupported space");
    }
}

std::pair<std::uint64_t, Point> EpsilonNet::nearest_cantor_value(double x) const {
    if (space.kind != SpaceKind::CantorSet) throw DomainError("nearest_cantor_value needs a cantor net");
    // Greedy descent over level pieces; ties toward digit 0 (lower index).
    std::uint64_t idx = 0;
    Ternary c((std::size_t)space.depth, '0');
    double lo = 0.0, w = 1.0;
    for (int b = 0; b < cantor_level; ++b) {
        w /= 3.0;
        bool two = x >= lo + 1.5 * w;  // midpoint between child pieces
        idx = (idx << 1) | (two ? 1u : 0u);
        if (two) {
            c[(std::size_t)b] = '2';
            lo += 2.0 * w;
        }
    }
    return {idx, c};
}

std::uint64_t covering_number(const DistortionSpace& s, double eps) {
    return EpsilonNet::build(s, eps).size;
}

double log_covering_number(const DistortionSpace& s, double eps) {
    if (s.kind == SpaceKind::UnitCube) {
        if (!(eps > 0.0)) throw ConfigError("net radius must be positive");
        double g = std::ceil(1.0 / (2.0 * eps) - 1e-12);
        if (g < 1.0) g = 1.0;
        return s.dim * std::log(g);
    }
    return EpsilonNet::build(s, eps).log_size;
}

std::vector<Point> epsilon_net(const DistortionSpace& s, double eps) {
    EpsilonNet n = EpsilonNet::build(s, eps);
    if (n.size > 1000000) throw CapacityError("net too large to materialize");
    std::vector<Point> out;
    out.reserve(n.size);
    for (std::uint64_t i = 0; i < n.size; ++i) out.push_back(n.unrank(i));
    return out;
}

std::string point_to_string(const Point& p) {
    if (const Label* l = std::get_if<Label>(&p)) return std::to_string(*l);
    if (const Ternary* t = std::get_if<Ternary>(&p)) return *t;
    const Vec& v = std::get<Vec>(p);
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ':';
        out += fmt_g17(v[i]);
    }
    return out;
}

Point point_from_string(const std::string& str, const DistortionSpace& s) {
    Point p;
    switch (s.kind) {
        case SpaceKind::FiniteDiscrete:
            p = (Label)parse_int_strict(str);
            break;
        case SpaceKind::CantorSet:
            p = Ternary(str);
            break;
        case SpaceKind::UnitCube:
        case SpaceKind::RealVector: {
            Vec v;
            std::size_t pos = 0;
            while (pos <= str.size()) {
                std::size_t next = str.find(':', pos);
                if (next == std::string::npos) next = str.size();
                v.push_back(parse_double_strict(str.substr(pos, next - pos)));
                pos = next + 1;
                if (next == str.size()) break;
            }
            p = std::move(v);
            break;
        }
    }
    s.validate_point(p);
    return p;
}

}  // namespace jumpcode
