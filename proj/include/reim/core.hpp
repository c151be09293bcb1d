// Shared domain types: intervals, sample grids, partial fractions, and the
// greedy model produced by the offline selection stage.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace reim {

using Vec = std::vector<double>;

struct Interval {
    double lo = 0.0;  // left endpoint, must stay positive
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo > 0.0) || !(lo < hi))
            throw std::invalid_argument("Interval requires 0 < lo < hi");
    }
};

// Sorted point set inside an interval; realizes both the pole candidate set
// and the interpolation-point candidate set.
struct SampleGrid {
    Vec points;
};

// r(x) = sum_i c_i / (x + b_i); poles sit at -b_i with b_i > 0.
struct PartialFraction {
    Vec poles_b;
    Vec residues_c;

    std::size_t size() const { return poles_b.size(); }
};

double pf_eval(const PartialFraction& pf, double x);

SampleGrid geometric_grid(const Interval& iv, int count);

// Per-iteration diagnostics of the greedy selection.
struct GreedyTrace {
    Vec sup_errors;  // dictionary residual max at each iteration
    Vec lebesgue;    // running stability estimate, always >= 1
};

// Row-major dense LU with partial pivoting, kept by the model so repeated
// interpolations reuse one factorization.
struct LuFactor {
    int n = 0;
    Vec lu;                 // packed L\U factors
    std::vector<int> piv;   // row swaps applied during elimination
};

struct ReimModel {
    Interval interval{1e-6, 1.0};
    Vec poles_b;   // b_1..b_n in selection order
    Vec interp_x;  // x_1..x_n in selection order
    LuFactor cauchy_factorization;  // LU of G with G(i,j) = 1/(x_i + b_j)
    GreedyTrace trace;
    std::map<std::string, std::string> meta;

    int size() const { return static_cast<int>(poles_b.size()); }
};

}  // namespace reim
