#pragma once

#include <span>
#include <string>
#include <vector>

#include "jumpcode/space.hpp"

namespace jumpcode {

// Piecewise-constant path on [0,1): value values[i] on [times[i-1], times[i]),
// right-continuous, values[k] from the last jump onward. Invariants: times
// strictly increasing inside (0,1); consecutive values at positive distortion.
struct JumpPath {
    std::vector<double> times;   // k jump times
    std::vector<Point> values;   // k+1 values, values[0] at t=0

    std::size_t jumps() const { return times.size(); }
};

// Validating constructor; DomainError when invariants fail.
JumpPath make_jump_path(std::vector<double> times, std::vector<Point> values,
                        const DistortionSpace& s);

// Sanitizing constructor for decoder/quantizer output: requires nondecreasing
// times; drops jumps at t <= 0 (they replace the initial value) and t >= 1,
// keeps the last value among tied times, and merges zero-distortion jumps.
JumpPath collapse_path(std::vector<double> times, std::vector<Point> values,
                       const DistortionSpace& s);

// Value at t in [0,1); a jump at exactly t yields the post-jump value.
const Point& path_eval(const JumpPath& f, double t);

// Integral of pointwise distortion over [0,1), exact via merged breakpoints.
double path_distortion(const JumpPath& f, const JumpPath& g, const DistortionSpace& s);

// (mean of d^s)^(1/s), compensated sum; s >= 1.
double moment_distortion(std::span<const double> distortions, double s);

// "k;t1,...,tk;v0,...,vk" with %.17g times and per-kind value text.
std::string serialize_path(const JumpPath& f);
JumpPath parse_path(const std::string& line, const DistortionSpace& s);

bool path_equal(const JumpPath& a, const JumpPath& b);

}  // namespace jumpcode
