// Offline greedy selection of pole/interpolation-point pairs and the online
// interpolation operator built on the resulting Cauchy system.
#pragma once

#include "reim/core.hpp"
#include "reim/targets.hpp"

namespace reim {

// Greedy selection over dictionary candidates B and sample grid sigma.
// Iteration m picks the candidate b whose current interpolation residual has
// the largest sup over the unselected samples, then the sample where that
// residual peaks. Ties break to the smallest candidate value; selection stops
// early once the best residual falls to 1e-13. Selected candidates leave both
// pools, so the Cauchy matrix stays nonsingular. Single-threaded by design:
// two runs with equal inputs give bit-identical models.
ReimModel reim_build(const SampleGrid& dictionary_b, const SampleGrid& sigma, int n,
                     const Interval& interval);

// Residues from point values: solves G c = values against the stored
// factorization, where G(i,j) = 1/(x_i + b_j).
Vec interpolate_values(const ReimModel& model, const Vec& values);

// Interpolant of f through the model's points, sharing the model's poles.
PartialFraction interpolate(const ReimModel& model, const TargetFunction& f);

double sup_error(const PartialFraction& pf, const TargetFunction& f, const SampleGrid& grid);

// Max over the grid of the Lebesgue function sum_i |psi_i(x)|, psi_i being the
// cardinal interpolants with psi_i(x_j) = delta_ij.
double lebesgue_estimate(const ReimModel& model, const SampleGrid& grid);

// Discrete least-squares residues over sigma for fixed poles.
PartialFraction least_squares_fit(const TargetFunction& f, const Vec& poles_b,
                                  const SampleGrid& sigma);

// Build-time knobs. The presets reflect per-use tuning of the candidate pools:
// negative powers do best with a coarse dictionary spread over many decades
// (selection then spaces poles nearly log-uniformly), while shifted
// reciprocals need a dense dictionary because each target sits close to a
// single dictionary element.
struct ReimConfig {
    Interval interval{1e-6, 1.0};
    double b_lo = 1e-7;
    double b_hi = 10.0;
    int b_count = 300;
    int sigma_count = 10000;
    int n = 30;

    static ReimConfig power_preset(const Interval& iv);
    static ReimConfig shifted_preset(const Interval& iv);
    static ReimConfig matfun_preset();
};

ReimModel build_model(const ReimConfig& cfg);

}  // namespace reim
