#pragma once

#include <optional>
#include <vector>

#include "jumpcode/path.hpp"
#include "jumpcode/rng.hpp"

namespace jumpcode {

enum class IncrementKind { UniformCube, CantorUniform, Discrete, PointMass };

// Law of a single jump increment. Compound sampling requires the increment to
// be nonzero almost surely; Discrete atoms are validated for that, the cantor
// sampler redraws the (prob 2^-depth) all-zeros string.
struct IncrementLaw {
    IncrementKind kind = IncrementKind::PointMass;
    DistortionSpace space;            // the space the increment lives on
    std::vector<Point> atoms;         // Discrete
    std::vector<double> probs;        // Discrete
    Point fixed = Vec{1.0};           // PointMass

    Point sample(Rng& rng) const;
    // Real value used when accumulating into vector-valued paths.
    double scalar_value(const Point& z) const;
};

IncrementLaw uniform_cube_increments(int dim);
IncrementLaw cantor_uniform_increments(int depth = 40);
IncrementLaw discrete_increments(DistortionSpace space, std::vector<Point> atoms,
                                 std::vector<double> probs);
IncrementLaw point_mass_increments(Point fixed);

enum class ProcessFamily { CompoundPoisson, Alternating, Counting, DiscreteGeneral };

// Poisson-many jumps at sorted uniforms; per-family value dynamics:
//   CompoundPoisson: running sums of iid increments, vector-valued paths,
//   Alternating: 0,1,0,1,... on the two-point space,
//   Counting: 0,1,2,... on the real line (unit increments),
//   DiscreteGeneral: labels, initial distribution + zero-diagonal kernel.
struct ProcessSpec {
    ProcessFamily family = ProcessFamily::Alternating;
    double lambda = 1.0;
    DistortionSpace value_space;
    std::optional<IncrementLaw> increments;  // CompoundPoisson
    std::vector<double> initial;             // DiscreteGeneral: distribution over labels
    std::vector<double> kernel;              // DiscreteGeneral: q*q, zero diagonal, rows sum to 1
};

ProcessSpec alternating_process(double lambda);
ProcessSpec counting_process(double lambda);
ProcessSpec compound_process(double lambda, IncrementLaw increments);
// Deterministic cycle 0 -> 1 -> ... -> q-1 -> 0 with uniform 0/1 distortion.
ProcessSpec cyclic_process(double lambda, int q);
ProcessSpec discrete_general_process(double lambda, DistortionSpace space,
                                     std::vector<double> initial, std::vector<double> kernel);

void validate_process(const ProcessSpec& spec);

// Poisson(lambda) count, sorted iid uniforms, full redraw on (measure-zero) ties.
std::vector<double> sample_jump_times(double lambda, Rng& rng);

JumpPath sample_path(const ProcessSpec& spec, Rng& rng);

}  // namespace jumpcode
