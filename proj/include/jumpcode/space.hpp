#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "jumpcode/errors.hpp"

namespace jumpcode {

// A point of a value space: finite-alphabet label, coordinate vector, or a
// ternary digit string ('0'/'2' per digit, most significant first).
using Label = std::int64_t;
using Vec = std::vector<double>;
using Ternary = std::string;
using Point = std::variant<Label, Vec, Ternary>;

bool point_equal(const Point& a, const Point& b);

// Real value of a ternary digit string: sum digit_i * 3^-i.
double ternary_value(const Ternary& t);

enum class SpaceKind { FiniteDiscrete, UnitCube, CantorSet, RealVector };

// Value space with its distortion. FiniteDiscrete carries an explicit matrix;
// UnitCube/RealVector use the sup norm; CantorSet uses |value(a) - value(b)|.
struct DistortionSpace {
    SpaceKind kind = SpaceKind::FiniteDiscrete;
    // FiniteDiscrete
    int q = 0;
    std::vector<double> matrix;  // q*q row-major
    bool triangle = false;       // verified at construction
    // UnitCube / RealVector
    int dim = 0;
    // CantorSet
    int depth = 0;

    double distortion(const Point& a, const Point& b) const;
    void validate_point(const Point& p) const;  // DomainError on mismatch
    std::optional<double> diameter() const;     // nullopt when unbounded
    bool bounded() const { return kind != SpaceKind::RealVector; }
    // Covering exponent: N(eps) <= eps^-(gamma+delta) for small eps.
    double covering_exponent() const;
};

DistortionSpace finite_discrete_space(int q, std::vector<double> matrix);
// 0/1 distortion on q labels.
DistortionSpace uniform_discrete_space(int q);
DistortionSpace two_point_space();
DistortionSpace unit_cube_space(int dim);
DistortionSpace cantor_space(int depth = 40);
DistortionSpace real_vector_space(int dim);

// Minimal nonzero entry of a FiniteDiscrete matrix (jump modulus floor).
double min_positive_distance(const DistortionSpace& s);

// eps-cover of the space with deterministic layout:
//   FiniteDiscrete: greedy lowest-index-first cover,
//   UnitCube: centered grid, ceil(1/(2 eps)) points per axis,
//   CantorSet: left endpoints of level-l pieces, l smallest with 3^-l <= eps.
// nearest() returns the lowest-index distortion minimizer.
struct EpsilonNet {
    DistortionSpace space;
    double eps = 0;
    std::uint64_t size = 0;
    double log_size = 0;
    // kind data
    std::uint64_t cube_g = 0;
    int cantor_level = 0;
    std::vector<Label> centers;  // FiniteDiscrete

    static EpsilonNet build(const DistortionSpace& s, double eps);

    Point unrank(std::uint64_t i) const;
    std::pair<std::uint64_t, Point> nearest(const Point& p) const;
    // Level-l left endpoint nearest to a real value (Increments use).
    std::pair<std::uint64_t, Point> nearest_cantor_value(double x) const;
};

std::uint64_t covering_number(const DistortionSpace& s, double eps);
double log_covering_number(const DistortionSpace& s, double eps);
// Materialized net; CapacityError above 10^6 points.
std::vector<Point> epsilon_net(const DistortionSpace& s, double eps);

std::string point_to_string(const Point& p);
Point point_from_string(const std::string& str, const DistortionSpace& s);

}  // namespace jumpcode
