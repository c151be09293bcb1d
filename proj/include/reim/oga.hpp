// Orthogonal greedy expansion in L2 over the approximation interval.
#pragma once

#include "reim/core.hpp"
#include "reim/numerics.hpp"
#include "reim/targets.hpp"

namespace reim {

struct RogaResult {
    Vec selected_b;
    PartialFraction expansion;  // final projection coefficients
    Vec l2_errors;              // residual norm after each iteration
};

// L2 projection of f onto span{1/(x+b) : b in basis_b}. Gram entries use the
// closed form; target moments use the supplied quadrature.
PartialFraction project_l2(const TargetFunction& f, const Vec& basis_b, const Interval& interval,
                           const Quadrature& quad);

// Iteration m selects the unselected candidate maximizing |<g, f - f_{m-1}>|
// (ties to smallest b), then reprojects. l2_errors[m-1] holds
// sqrt(max(||f||^2 - <f, f_m>, 0)); the clamp absorbs round-off once the
// residual reaches the noise floor.
RogaResult roga_run(const TargetFunction& f, const SampleGrid& dictionary_b, int n,
                    const Interval& interval, const Quadrature& quad);

// Default moment quadrature: 200 geometric panels, order 16.
Quadrature roga_default_quadrature(const Interval& interval);

}  // namespace reim
