// exp(-tau L) v and phi(-tau L) v for SPD operators through one shared block
// of shifted solves.
#pragma once

#include <map>
#include <vector>

#include "reim/core.hpp"
#include "reim/fracpde.hpp"

namespace reim {

enum class MatFunKind { Exp, Phi };

// pf = interpolant of exp(-tau x) or phi(-tau x) on the model interval, then
// sum_i c_i (L + b_i I)^{-1} v. No rescaling: the model is built directly on
// an interval covering the spectrum.
Vec apply_matrix_function(const SparseOperator& l, MatFunKind kind, double tau, const Vec& v,
                          const ReimModel& model, const SpectralBounds& bounds, int threads = 1);

// Residue sets for every (tau, kind) pair; all entries carry the model's pole
// array unchanged, so one family of factorizations serves the whole sweep.
std::map<double, std::map<MatFunKind, PartialFraction>> shared_pole_family(
    const ReimModel& model, const Vec& tau_list, const std::vector<MatFunKind>& kinds);

// Eigen-oracle references for tests: V diag(g(lambda)) V^T v.
Vec dense_matrix_function(const DenseMatrix& l, MatFunKind kind, double tau, const Vec& v);

}  // namespace reim
