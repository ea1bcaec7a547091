#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "jumpcode/rng.hpp"
#include "jumpcode/space.hpp"

using namespace jumpcode;

namespace {

Point random_point(const DistortionSpace& s, Rng& rng) {
    switch (s.kind) {
        case SpaceKind::FiniteDiscrete:
            return (Label)rng.below((std::uint64_t)s.q);
        case SpaceKind::UnitCube: {
            Vec v((std::size_t)s.dim);
            for (double& x : v) x = rng.uniform01();
            return v;
        }
        case SpaceKind::CantorSet: {
            Ternary t((std::size_t)s.depth, '0');
            for (char& c : t) c = rng.below(2) ? '2' : '0';
            return t;
        }
        default:
            return Vec{0.0};
    }
}

}  // namespace

TEST_CASE("finite space factory validates the matrix") {
    CHECK_NOTHROW(finite_discrete_space(3, {0, 1, 2, 1, 0, 1, 2, 1, 0}));
    CHECK_THROWS_AS(finite_discrete_space(2, {0, 1, 1}), ConfigError);             // wrong size
    CHECK_THROWS_AS(finite_discrete_space(2, {0.5, 1, 1, 0}), ConfigError);        // diagonal
    CHECK_THROWS_AS(finite_discrete_space(2, {0, 1, 2, 0}), ConfigError);          // asymmetric
    CHECK_THROWS_AS(finite_discrete_space(2, {0, -1, -1, 0}), ConfigError);        // negative
}

TEST_CASE("triangle flag reflects the metric inequality") {
    CHECK(uniform_discrete_space(5).triangle);
    DistortionSpace bad = finite_discrete_space(3, {0, 1, 3, 1, 0, 1, 3, 1, 0});
    CHECK(!bad.triangle);  // d(0,2) = 3 > d(0,1) + d(1,2) = 2
}

TEST_CASE("distortions follow each space's rule") {
    DistortionSpace f = uniform_discrete_space(4);
    CHECK(f.distortion(Label{1}, Label{1}) == 0.0);
    CHECK(f.distortion(Label{1}, Label{3}) == 1.0);

    DistortionSpace c = unit_cube_space(3);
    CHECK(c.distortion(Vec{0.1, 0.5, 0.9}, Vec{0.4, 0.5, 0.8})
          == doctest::Approx(0.3).epsilon(1e-12));

    DistortionSpace k = cantor_space(4);
    CHECK(k.distortion(Ternary("0200"), Ternary("0000")) == doctest::Approx(2.0 / 9.0));
    CHECK(ternary_value("22") == doctest::Approx(8.0 / 9.0));
    CHECK(ternary_value("") == 0.0);
    CHECK_THROWS_AS(ternary_value("01"), DomainError);
}

TEST_CASE("validate_point rejects foreign and out-of-range points") {
    DistortionSpace c = unit_cube_space(2);
    CHECK_THROWS_AS(c.validate_point(Vec{0.5}), DomainError);        // wrong dim
    CHECK_THROWS_AS(c.validate_point(Vec{0.5, 1.5}), DomainError);   // outside cube
    CHECK_THROWS_AS(c.validate_point(Label{0}), DomainError);        // wrong variant
    CHECK_THROWS_AS(uniform_discrete_space(3).validate_point(Label{3}), DomainError);
    CHECK_THROWS_AS(cantor_space(3).validate_point(Ternary("02")), DomainError);   // length
    CHECK_THROWS_AS(cantor_space(3).validate_point(Ternary("012")), DomainError);  // digit
}

TEST_CASE("diameter and covering exponent per kind") {
    CHECK(*uniform_discrete_space(3).diameter() == 1.0);
    CHECK(*finite_discrete_space(2, {0, 2.5, 2.5, 0}).diameter() == 2.5);
    CHECK(*unit_cube_space(4).diameter() == 1.0);
    CHECK(*cantor_space(10).diameter() == 1.0);
    CHECK(!real_vector_space(1).diameter().has_value());

    CHECK(uniform_discrete_space(9).covering_exponent() == 0.0);
    CHECK(unit_cube_space(3).covering_exponent() == 3.0);
    CHECK(cantor_space(10).covering_exponent() == doctest::Approx(std::log(2.0) / std::log(3.0)));
}

TEST_CASE("min_positive_distance finds the jump modulus floor") {
    CHECK(min_positive_distance(uniform_discrete_space(3)) == 1.0);
    CHECK(min_positive_distance(finite_discrete_space(3, {0, 2, 5, 2, 0, 3, 5, 3, 0})) == 2.0);
    CHECK_THROWS_AS(min_positive_distance(unit_cube_space(1)), ConfigError);
}

TEST_CASE("net sizes match the construction rules") {
    CHECK(covering_number(unit_cube_space(1), 0.25) == 2);
    CHECK(covering_number(unit_cube_space(2), 0.1) == 25);
    CHECK(covering_number(cantor_space(20), 1.0 / 81.0 + 1e-15) == 16);
    CHECK(covering_number(uniform_discrete_space(4), 0.5) == 4);  // nothing else within 1/2
    CHECK(covering_number(uniform_discrete_space(4), 1.0) == 1);  // one center covers all
    CHECK(EpsilonNet::build(unit_cube_space(1), 0.6).size == 1);
}

TEST_CASE("every net covers at radius eps over random probes") {
    std::vector<DistortionSpace> spaces{two_point_space(), uniform_discrete_space(5),
                                        unit_cube_space(1), unit_cube_space(2), unit_cube_space(3),
                                        cantor_space(30)};
    Rng rng(7);
    for (const auto& s : spaces) {
        for (int j = 1; j <= 8; ++j) {
            double eps = std::ldexp(1.0, -j);
            EpsilonNet net = EpsilonNet::build(s, eps);
            for (int t = 0; t < 300; ++t) {
                Point p = random_point(s, rng);
                auto [idx, c] = net.nearest(p);
                REQUIRE(idx < net.size);
                CHECK(s.distortion(p, c) <= eps + 1e-12);
            }
        }
    }
}

TEST_CASE("cube net is tight: worst case equals eps at the faces") {
    DistortionSpace s = unit_cube_space(2);
    EpsilonNet net = EpsilonNet::build(s, 0.1);
    double worst = 0;
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) {
            Point p = Vec{i / 100.0, j / 100.0};
            worst = std::max(worst, s.distortion(p, net.nearest(p).second));
        }
    CHECK(worst <= 0.1 + 1e-12);
    CHECK(worst >= 0.1 - 1e-12);  // attained at the boundary
}

TEST_CASE("nearest inverts unrank on full grids") {
    EpsilonNet cube = EpsilonNet::build(unit_cube_space(2), 0.1);
    for (std::uint64_t i = 0; i < cube.size; ++i) {
        auto [j, c] = cube.nearest(cube.unrank(i));
        CHECK(j == i);
        CHECK(point_equal(c, cube.unrank(i)));
    }
    EpsilonNet cant = EpsilonNet::build(cantor_space(8), 1.0 / 27.0);
    CHECK(cant.size == 8);
    for (std::uint64_t i = 0; i < cant.size; ++i) CHECK(cant.nearest(cant.unrank(i)).first == i);
    CHECK_THROWS_AS(cant.unrank(cant.size), DomainError);
}

TEST_CASE("cube nearest breaks dead-center ties downward") {
    EpsilonNet net = EpsilonNet::build(unit_cube_space(1), 0.25);  // centers 1/4, 3/4
    auto [idx, c] = net.nearest(Vec{0.5});
    CHECK(idx == 0);
    CHECK(std::get<Vec>(c)[0] == doctest::Approx(0.25));
}

TEST_CASE("nearest_cantor_value picks the closest level piece") {
    EpsilonNet net = EpsilonNet::build(cantor_space(6), 1.0 / 3.0);
    CHECK(net.cantor_level == 1);
    CHECK(net.nearest_cantor_value(0.49).first == 0);
    CHECK(net.nearest_cantor_value(0.51).first == 1);
    CHECK(std::get<Ternary>(net.nearest_cantor_value(0.51).second) == "200000");
}

TEST_CASE("oversized nets fail loudly, log sizes still compute") {
    CHECK_THROWS_AS(EpsilonNet::build(unit_cube_space(3), 1e-19), CapacityError);
    CHECK_THROWS_AS(EpsilonNet::build(real_vector_space(1), 0.5), FeasibilityError);
    CHECK_THROWS_AS(epsilon_net(unit_cube_space(2), 0.0004), CapacityError);  // 1250^2 points
    CHECK(log_covering_number(unit_cube_space(3), 1e-6)
          == doctest::Approx(3.0 * std::log(500000.0)).epsilon(1e-12));
}

TEST_CASE("point text round-trips exactly") {
    DistortionSpace cube = unit_cube_space(2);
    Point p = Vec{0.12345678901234567, 1.0 / 3.0};
    Point q = point_from_string(point_to_string(p), cube);
    CHECK(point_equal(p, q));

    DistortionSpace fin = uniform_discrete_space(5);
    CHECK(point_equal(point_from_string("3", fin), Point{Label{3}}));

    DistortionSpace cant = cantor_space(4);
    CHECK(point_equal(point_from_string("0220", cant), Point{Ternary("0220")}));

    CHECK_THROWS_AS(point_from_string("0.5", cube), DomainError);          // missing coordinate
    CHECK_THROWS_AS(point_from_string("0.5:abc", cube), DomainError);      // bad number
    CHECK_THROWS_AS(point_from_string("7", fin), DomainError);             // label range
    CHECK_THROWS_AS(point_from_string("0120", cant), DomainError);         // bad digit
}
