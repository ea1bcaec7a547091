#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "jumpcode/path.hpp"
#include "jumpcode/rng.hpp"
#include "jumpcode/special.hpp"

using namespace jumpcode;

namespace {

const DistortionSpace kTwo = two_point_space();

JumpPath two(std::vector<double> t, std::vector<Label> v) {
    std::vector<Point> pts(v.begin(), v.end());
    return make_jump_path(std::move(t), std::move(pts), kTwo);
}

// Midpoint Riemann sum of the pointwise distortion; error <= breakpoints/n.
double riemann_distortion(const JumpPath& f, const JumpPath& g, const DistortionSpace& s, int n) {
    KahanSum acc;
    for (int i = 0; i < n; ++i) {
        double t = (i + 0.5) / n;
        acc.add(s.distortion(path_eval(f, t), path_eval(g, t)));
    }
    return acc.value() / n;
}

}  // namespace

TEST_CASE("make_jump_path enforces the invariants") {
    CHECK_NOTHROW(two({0.25, 0.5}, {0, 1, 0}));
    CHECK_THROWS_AS(two({0.25}, {0, 1, 0}), DomainError);        // count mismatch
    CHECK_THROWS_AS(two({0.0}, {0, 1}), DomainError);            // t = 0
    CHECK_THROWS_AS(two({1.0}, {0, 1}), DomainError);            // t = 1
    CHECK_THROWS_AS(two({0.5, 0.5}, {0, 1, 0}), DomainError);    // equal times
    CHECK_THROWS_AS(two({0.6, 0.5}, {0, 1, 0}), DomainError);    // decreasing
    CHECK_THROWS_AS(two({0.5}, {1, 1}), DomainError);            // no actual jump
}

TEST_CASE("path_eval returns the post-jump value at the jump time") {
    JumpPath f = two({0.5}, {0, 1});
    CHECK(std::get<Label>(path_eval(f, 0.0)) == 0);
    CHECK(std::get<Label>(path_eval(f, 0.4999999)) == 0);
    CHECK(std::get<Label>(path_eval(f, 0.5)) == 1);
    CHECK(std::get<Label>(path_eval(f, 0.999)) == 1);
    CHECK_THROWS_AS(path_eval(f, 1.0), DomainError);
    CHECK_THROWS_AS(path_eval(f, -0.1), DomainError);
}

TEST_CASE("path_distortion has closed-form values on labels") {
    JumpPath f = two({0.25}, {0, 1});
    JumpPath g = two({}, {0});
    JumpPath h = two({0.75}, {0, 1});
    CHECK(path_distortion(f, g, kTwo) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(path_distortion(f, h, kTwo) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(path_distortion(f, f, kTwo) == 0.0);
    // triangle inequality on the path metric
    CHECK(path_distortion(f, h, kTwo)
          <= path_distortion(f, g, kTwo) + path_distortion(g, h, kTwo) + 1e-12);
}

TEST_CASE("path_distortion agrees with a Riemann sum on vector paths") {
    DistortionSpace cube = unit_cube_space(2);
    Rng rng(5);
    for (int rep = 0; rep < 4; ++rep) {
        auto sample = [&](int k) {
            std::vector<double> t;
            for (int i = 0; i < k; ++i) t.push_back(rng.uniform01() * 0.98 + 0.01);
            std::sort(t.begin(), t.end());
            std::vector<Point> v;
            for (int i = 0; i <= k; ++i) v.push_back(Vec{rng.uniform01(), rng.uniform01()});
            return make_jump_path(std::move(t), std::move(v), cube);
        };
        JumpPath f = sample(3 + rep), g = sample(2 + rep);
        double exact = path_distortion(f, g, cube);
        CHECK(std::fabs(exact - riemann_distortion(f, g, cube, 200000)) < 1e-4);
    }
}

TEST_CASE("moment_distortion computes power means") {
    std::vector<double> d{3.0, 4.0};
    CHECK(moment_distortion(d, 1.0) == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(moment_distortion(d, 2.0) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));
    CHECK_THROWS_AS(moment_distortion(d, 0.5), ConfigError);
    CHECK_THROWS_AS(moment_distortion(std::vector<double>{}, 1.0), ConfigError);
}

TEST_CASE("serialization round-trips exactly for every value kind") {
    JumpPath lf = two({1.0 / 3.0, 0.70000000000000007}, {0, 1, 0});
    CHECK(path_equal(parse_path(serialize_path(lf), kTwo), lf));

    DistortionSpace cube = unit_cube_space(2);
    JumpPath vf = make_jump_path({0.12345678901234567},
                                 {Vec{0.1, 0.2}, Vec{1.0 / 7.0, 0.9}}, cube);
    CHECK(path_equal(parse_path(serialize_path(vf), cube), vf));

    DistortionSpace cant = cantor_space(5);
    JumpPath tf = make_jump_path({0.5}, {Ternary("00000"), Ternary("20202")}, cant);
    CHECK(path_equal(parse_path(serialize_path(tf), cant), tf));
    CHECK(serialize_path(two({}, {1})) == "0;;1");
}

TEST_CASE("parse_path rejects malformed records") {
    CHECK_THROWS_AS(parse_path("1;0.5", kTwo), DomainError);          // one separator
    CHECK_THROWS_AS(parse_path("2;0.5;0,1", kTwo), DomainError);      // k vs times
    CHECK_THROWS_AS(parse_path("1;0.5;0,1,0", kTwo), DomainError);    // k vs values
    CHECK_THROWS_AS(parse_path("1;zz;0,1", kTwo), DomainError);       // bad time
    CHECK_THROWS_AS(parse_path("1;0.5;0,9", kTwo), DomainError);      // bad label
    CHECK_THROWS_AS(parse_path("1;0.6,0.5;0,1,0", kTwo), DomainError);  // extra time
    CHECK_THROWS_AS(parse_path("-1;;0", kTwo), DomainError);
}

TEST_CASE("collapse_path sanitizes decoder output") {
    auto pts = [](std::vector<Label> v) { return std::vector<Point>(v.begin(), v.end()); };

    // jump at t <= 0 replaces the initial value
    JumpPath a = collapse_path({0.0, 0.5}, pts({0, 1, 0}), kTwo);
    CHECK(path_equal(a, two({0.5}, {1, 0})));

    // jumps at t >= 1 are dropped
    JumpPath b = collapse_path({0.5, 1.0}, pts({0, 1, 0}), kTwo);
    CHECK(path_equal(b, two({0.5}, {0, 1})));

    // tied times: the last value wins, then the no-op jump is merged away
    JumpPath c = collapse_path({0.5, 0.5}, pts({0, 1, 0}), kTwo);
    CHECK(path_equal(c, two({}, {0})));

    // zero-distortion jump chains merge
    JumpPath d = collapse_path({0.3, 0.6}, pts({0, 0, 1}), kTwo);
    CHECK(path_equal(d, two({0.6}, {0, 1})));

    CHECK_THROWS_AS(collapse_path({0.6, 0.5}, pts({0, 1, 0}), kTwo), DomainError);
}

TEST_CASE("path_equal is exact") {
    JumpPath f = two({0.5}, {0, 1});
    CHECK(path_equal(f, two({0.5}, {0, 1})));
    CHECK(!path_equal(f, two({std::nextafter(0.5, 1.0)}, {0, 1})));
    CHECK(!path_equal(f, two({0.5}, {1, 0})));
    CHECK(!path_equal(f, two({}, {0})));
}
