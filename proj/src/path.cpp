#include "jumpcode/path.hpp"

#include <algorithm>
#include <cmath>

#include "jumpcode/special.hpp"
#include "jumpcode/util.hpp"

namespace jumpcode {

JumpPath make_jump_path(std::vector<double> times, std::vector<Point> values,
                        const DistortionSpace& s) {
    if (values.size() != times.size() + 1) throw DomainError("path needs k+1 values for k jumps");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev && t < 1.0)) throw DomainError("jump times must be strictly increasing in (0,1)");
        prev = t;
    }
    for (const Point& v : values) s.validate_point(v);
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (!(s.distortion(values[i], values[i + 1]) > 0.0))
            throw DomainError("consecutive path values must differ");
    return JumpPath{std::move(times), std::move(values)};
}

JumpPath collapse_path(std::vector<double> times, std::vector<Point> values,
                       const DistortionSpace& s) {
    if (values.size() != times.size() + 1) throw DomainError("path needs k+1 values for k jumps");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1]) throw DomainError("collapse_path requires nondecreasing times");
    for (const Point& v : values) s.validate_point(v);

    std::vector<double> t2;
    std::vector<Point> v2;
    v2.push_back(values[0]);
    for (std::size_t i = 0; i < times.size(); ++i) {
        double t = times[i];
        const Point& v = values[i + 1];
        if (t >= 1.0) break;  // later times only larger
        if (t <= 0.0) {
            v2.back() = v;  // jump at the origin replaces the initial value
            continue;
        }
        if (!t2.empty() && t == t2.back()) {
            v2.back() = v;  // tied times: last value wins
            continue;
        }
        t2.push_back(t);
        v2.push_back(v);
    }
    // Merge zero-distortion jumps left to right.
    std::vector<double> t3;
    std::vector<Point> v3;
    v3.push_back(v2[0]);
    for (std::size_t i = 0; i < t2.size(); ++i) {
        if (s.distortion(v3.back(), v2[i + 1]) > 0.0) {
            t3.push_back(t2[i]);
            v3.push_back(v2[i + 1]);
        }
    }
    return JumpPath{std::move(t3), std::move(v3)};
}

const Point& path_eval(const JumpPath& f, double t) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("path_eval needs t in [0,1)");
    std::size_t idx = (std::size_t)(std::upper_bound(f.times.begin(), f.times.end(), t) - f.times.begin());
    return f.values[idx];
}

double path_distortion(const JumpPath& f, const JumpPath& g, const DistortionSpace& s) {
    KahanSum acc;
    std::size_t i = 0, j = 0;
    double cur = 0.0;
    while (cur < 1.0) {
        double nf = i < f.times.size() ? f.times[i] : 1.0;
        double ng = j < g.times.size() ? g.times[j] : 1.0;
        double nxt = std::min({nf, ng, 1.0});
        if (nxt > cur) acc.add(s.distortion(f.values[i], g.values[j]) * (nxt - cur));
        if (nf == nxt && i < f.times.size()) ++i;
        if (ng == nxt && j < g.times.size()) ++j;
        cur = nxt;
    }
    return acc.value();
}

double moment_distortion(std::span<const double> distortions, double s) {
    if (!(s >= 1.0)) throw ConfigError("moment order must satisfy s >= 1");
    if (distortions.empty()) throw ConfigError("moment_distortion needs at least one sample");
    KahanSum acc;
    for (double d : distortions) acc.add(std::pow(d, s));
    return std::pow(acc.value() / (double)distortions.size(), 1.0 / s);
}

std::string serialize_path(const JumpPath& f) {
    std::string out = std::to_string(f.jumps());
    out += ';';
    for (std::size_t i = 0; i < f.times.size(); ++i) {
        if (i) out += ',';
        out += fmt_g17(f.times[i]);
    }
    out += ';';
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (i) out += ',';
        out += point_to_string(f.values[i]);
    }
    return out;
}

JumpPath parse_path(const std::string& line, const DistortionSpace& s) {
    std::size_t p1 = line.find(';');
    std::size_t p2 = p1 == std::string::npos ? std::string::npos : line.find(';', p1 + 1);
    if (p2 == std::string::npos) throw DomainError("path record needs two ';' separators");
    long long k = parse_int_strict(line.substr(0, p1));
    if (k < 0) throw DomainError("negative jump count");
    auto split = [](const std::string& str) {
        std::vector<std::string> parts;
        if (str.empty()) return parts;
        std::size_t pos = 0;
        for (;;) {
            std::size_t next = str.find(',', pos);
            if (next == std::string::npos) {
                parts.push_back(str.substr(pos));
                return parts;
            }
            parts.push_back(str.substr(pos, next - pos));
            pos = next + 1;
        }
    };
    std::vector<std::string> ts = split(line.substr(p1 + 1, p2 - p1 - 1));
    std::vector<std::string> vs = split(line.substr(p2 + 1));
    if ((long long)ts.size() != k || (long long)vs.size() != k + 1)
        throw DomainError("path record field counts do not match jump count");
    std::vector<double> times;
    times.reserve(ts.size());
    for (const std::string& t : ts) times.push_back(parse_double_strict(t));
    std::vector<Point> values;
    values.reserve(vs.size());
    for (const std::string& v : vs) values.push_back(point_from_string(v, s));
    return make_jump_path(std::move(times), std::move(values), s);
}

bool path_equal(const JumpPath& a, const JumpPath& b) {
    return a.times == b.times &&
           a.values.size() == b.values.size() &&
           std::equal(a.values.begin(), a.values.end(), b.values.begin(), point_equal);
}

}  // namespace jumpcode
