#include "jumpcode/sim.hpp"

#include <algorithm>
#include <cmath>

namespace jumpcode {

Point IncrementLaw::sample(Rng& rng) const {
    switch (kind) {
        case IncrementKind::UniformCube: {
            Vec v((std::size_t)space.dim);
            for (double& x : v) x = rng.uniform01();
            return v;
        }
        case IncrementKind::CantorUniform: {
            for (;;) {
                Ternary t((std::size_t)space.depth, '0');
                bool nonzero = false;
                for (char& c : t)
                    if (rng.uniform01() < 0.5) {
                        c = '2';
                        nonzero = true;
                    }
                if (nonzero) return t;  // increment must be nonzero a.s.
            }
        }
        case IncrementKind::Discrete: {
            double u = rng.uniform01();
            double cdf = 0.0;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                cdf += probs[i];
                if (u < cdf) return atoms[i];
            }
            return atoms.back();
        }
        case IncrementKind::PointMass:
            return fixed;
    }
    throw ConfigError("unknown increment kind");
}

double IncrementLaw::scalar_value(const Point& z) const {
    if (const Ternary* t = std::get_if<Ternary>(&z)) return ternary_value(*t);
    if (const Vec* v = std::get_if<Vec>(&z)) {
        if (v->size() != 1) throw DomainError("scalar_value needs a 1-dim increment");
        return (*v)[0];
    }
    throw DomainError("scalar_value: labels have no numeric value");
}

IncrementLaw uniform_cube_increments(int dim) {
    IncrementLaw law;
    law.kind = IncrementKind::UniformCube;
    law.space = unit_cube_space(dim);
    return law;
}

IncrementLaw cantor_uniform_increments(int depth) {
    IncrementLaw law;
    law.kind = IncrementKind::CantorUniform;
    law.space = cantor_space(depth);
    return law;
}

IncrementLaw discrete_increments(DistortionSpace space, std::vector<Point> atoms,
                                 std::vector<double> probs) {
    if (atoms.empty() || atoms.size() != probs.size())
        throw ConfigError("discrete increments need matching nonempty atoms/probs");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw ConfigError("atom probabilities must be positive");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw ConfigError("atom probabilities must sum to 1");
    for (const Point& a : atoms) space.validate_point(a);
    IncrementLaw law;
    law.kind = IncrementKind::Discrete;
    law.space = std::move(space);
    law.atoms = std::move(atoms);
    law.probs = std::move(probs);
    return law;
}

IncrementLaw point_mass_increments(Point fixed) {
    IncrementLaw law;
    law.kind = IncrementKind::PointMass;
    law.fixed = std::move(fixed);
    law.space = real_vector_space(1);
    return law;
}

ProcessSpec alternating_process(double lambda) {
    ProcessSpec s;
    s.family = ProcessFamily::Alternating;
    s.lambda = lambda;
    s.value_space = two_point_space();
    validate_process(s);
    return s;
}

ProcessSpec counting_process(double lambda) {
    ProcessSpec s;
    s.family = ProcessFamily::Counting;
    s.lambda = lambda;
    s.value_space = real_vector_space(1);
    validate_process(s);
    return s;
}

ProcessSpec compound_process(double lambda, IncrementLaw increments) {
    ProcessSpec s;
    s.family = ProcessFamily::CompoundPoisson;
    s.lambda = lambda;
    int dim = increments.kind == IncrementKind::UniformCube ? increments.space.dim : 1;
    s.value_space = real_vector_space(dim);
    s.increments = std::move(increments);
    validate_process(s);
    return s;
}

ProcessSpec cyclic_process(double lambda, int q) {
    if (q < 2) throw ConfigError("cyclic process needs q >= 2");
    std::vector<double> kernel((std::size_t)q * q, 0.0);
    for (int i = 0; i < q; ++i) kernel[(std::size_t)i * q + (i + 1) % q] = 1.0;
    std::vector<double> initial((std::size_t)q, 0.0);
    initial[0] = 1.0;
    return discrete_general_process(lambda, uniform_discrete_space(q), std::move(initial),
                                    std::move(kernel));
}

ProcessSpec discrete_general_process(double lambda, DistortionSpace space,
                                     std::vector<double> initial, std::vector<double> kernel) {
    ProcessSpec s;
    s.family = ProcessFamily::DiscreteGeneral;
    s.lambda = lambda;
    s.value_space = std::move(space);
    s.initial = std::move(initial);
    s.kernel = std::move(kernel);
    validate_process(s);
    return s;
}

void validate_process(const ProcessSpec& spec) {
    if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda))
        throw ConfigError("jump intensity must be positive and finite");
    switch (spec.family) {
        case ProcessFamily::Alternating:
            if (spec.value_space.kind != SpaceKind::FiniteDiscrete || spec.value_space.q != 2)
                throw ConfigError("alternating process lives on the two-point space");
            return;
        case ProcessFamily::Counting:
            if (spec.value_space.kind != SpaceKind::RealVector || spec.value_space.dim != 1)
                throw ConfigError("counting process lives on the real line");
            return;
        case ProcessFamily::CompoundPoisson: {
            if (!spec.increments) throw ConfigError("compound process needs an increment law");
            const IncrementLaw& law = *spec.increments;
            if (law.kind == IncrementKind::Discrete) {
                for (const Point& a : law.atoms) {
                    bool zero = false;
                    if (const Vec* v = std::get_if<Vec>(&a)) {
                        zero = std::all_of(v->begin(), v->end(), [](double x) { return x == 0.0; });
                    } else if (const Ternary* t = std::get_if<Ternary>(&a)) {
                        zero = t->find('2') == std::string::npos;
                    }
                    if (zero) throw ConfigError("increment atoms must be nonzero");
                }
            }
            if (law.kind == IncrementKind::PointMass && law.scalar_value(law.fixed) == 0.0)
                throw ConfigError("point-mass increment must be nonzero");
            if (spec.value_space.kind != SpaceKind::RealVector)
                throw ConfigError("compound paths take values in a real vector space");
            return;
        }
        case ProcessFamily::DiscreteGeneral: {
            const DistortionSpace& s = spec.value_space;
            if (s.kind != SpaceKind::FiniteDiscrete)
                throw ConfigError("general discrete process needs a finite space");
            int q = s.q;
            if ((int)spec.initial.size() != q || (int)spec.kernel.size() != q * q)
                throw ConfigError("initial/kernel sizes must match the alphabet");
            double isum = 0.0;
            for (double p : spec.initial) {
                if (p < 0.0) throw ConfigError("initial distribution must be nonnegative");
                isum += p;
            }
            if (std::fabs(isum - 1.0) > 1e-12) throw ConfigError("initial distribution must sum to 1");
            for (int i = 0; i < q; ++i) {
                double rsum = 0.0;
                for (int j = 0; j < q; ++j) {
                    double p = spec.kernel[(std::size_t)i * q + j];
                    if (p < 0.0) throw ConfigError("kernel rows must be nonnegative");
                    if (i == j && p != 0.0) throw ConfigError("kernel diagonal must be zero");
                    if (p > 0.0 && s.matrix[(std::size_t)i * q + j] <= 0.0)
                        throw ConfigError("kernel transitions must have positive distortion");
                    rsum += p;
                }
                if (std::fabs(rsum - 1.0) > 1e-12) throw ConfigError("kernel rows must sum to 1");
            }
            return;
        }
    }
    throw ConfigError("unknown process family");
}

std::vector<double> sample_jump_times(double lambda, Rng& rng) {
    std::uint64_t k = rng.poisson(lambda);
    for (;;) {
        std::vector<double> t((std::size_t)k);
        for (double& x : t) x = rng.uniform01();
        std::sort(t.begin(), t.end());
        bool tied = false;
        for (std::size_t i = 0; i + 1 < t.size(); ++i)
            if (t[i] == t[i + 1] || t[i] == 0.0) tied = true;
        if (!tied) return t;
    }
}

JumpPath sample_path(const ProcessSpec& spec, Rng& rng) {
    validate_process(spec);
    std::vector<double> times = sample_jump_times(spec.lambda, rng);
    std::size_t k = times.size();
    std::vector<Point> values;
    values.reserve(k + 1);
    switch (spec.family) {
        case ProcessFamily::Alternating:
            for (std::size_t i = 0; i <= k; ++i) values.push_back((Label)(i % 2));
            break;
        case ProcessFamily::Counting:
            for (std::size_t i = 0; i <= k; ++i) values.push_back(Vec{(double)i});
            break;
        case ProcessFamily::CompoundPoisson: {
            const IncrementLaw& law = *spec.increments;
            if (law.kind == IncrementKind::UniformCube) {
                Vec cur((std::size_t)law.space.dim, 0.0);
                values.push_back(cur);
                for (std::size_t i = 0; i < k; ++i) {
                    Vec z = std::get<Vec>(law.sample(rng));
                    for (std::size_t d = 0; d < cur.size(); ++d) cur[d] += z[d];
                    values.push_back(cur);
                }
            } else {
                double cur = 0.0;
                values.push_back(Vec{cur});
                for (std::size_t i = 0; i < k; ++i) {
                    cur += law.scalar_value(law.sample(rng));
                    values.push_back(Vec{cur});
                }
            }
            break;
        }
        case ProcessFamily::DiscreteGeneral: {
            int q = spec.value_space.q;
            auto draw = [&](const double* row) {
                double u = rng.uniform01();
                double cdf = 0.0;
                for (int j = 0; j < q; ++j) {
                    cdf += row[j];
                    if (u < cdf) return (Label)j;
                }
                return (Label)(q - 1);
            };
            Label cur = draw(spec.initial.data());
            values.push_back(cur);
            for (std::size_t i = 0; i < k; ++i) {
                cur = draw(spec.kernel.data() + (std::size_t)cur * q);
                values.push_back(cur);
            }
            break;
        }
    }
    return make_jump_path(std::move(times), std::move(values), spec.value_space);
}

}  // namespace jumpcode
