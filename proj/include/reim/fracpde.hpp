// Spectral-fractional Poisson solver on the square via shifted solves, with
// the eigen-expansion reference and a dense oracle for verification.
#pragma once

#include <optional>
#include <string>

#include "reim/core.hpp"
#include "reim/greedy.hpp"
#include "reim/numerics.hpp"

namespace reim {

// Uniform interior grid on (-1,1)^2, lexicographic index i*M + j. Convergence
// tables are labeled by h = 2^{-p}; the grid reproducing the tabulated error
// at label h has M = 1/h - 1 interior points per dimension, hence uniform
// spacing 2h.
struct Grid2D {
    int M = 1;
    double spacing = 1.0;

    static Grid2D from_interior(int m);
    static Grid2D from_table_label_log2(int p);  // label 2^{-p}

    int size() const { return M * M; }
};

struct SpectralBounds {
    double lambda_min_lb = 0.0;
    double lambda_max_ub = 0.0;  // the rescaling constant
};

// 5-point stencil with Dirichlet elimination for interior spacing `spacing`:
// diagonal 4/spacing^2, neighbor entries -1/spacing^2.
SparseOperator laplacian_5pt(int m, double spacing);

SparseOperator assemble_laplacian_2d(const Grid2D& grid);

// lambda_min_lb is the exact smallest discrete eigenvalue
// 8 sin^2(pi*spacing/4)/spacing^2; lambda_max_ub defaults to
// max(8/spacing^2, 1e6).
SpectralBounds spectral_bounds(const Grid2D& grid,
                               std::optional<double> override_lambda = std::nullopt);

// Left endpoint for the approximation interval: the spectral ratio rounded
// down to a power of ten, never above 1e-6.
double default_eta(const SpectralBounds& bounds);

// u = sum_i c_i (A/Lambda + b_i I)^{-1} f / Lambda^s with residues from the
// negative-power interpolant on the model's interval.
Vec solve_fractional(const SparseOperator& a, const SpectralBounds& bounds, double s,
                     const Vec& f, const ReimModel& model, int threads = 1);

// Eigendecomposition reference A^{-s} f for small dense SPD matrices.
Vec dense_oracle_solve(const DenseMatrix& a, double s, const Vec& f);

// Truncated eigen-expansion of the continuous solution for f = 1, sampled at
// the grid points: sum over odd j,k <= jk_max of
// lambda_jk^{-s} * 16/(pi^2 j k) * sin(j pi (x+1)/2) sin(k pi (y+1)/2),
// lambda_jk = (j^2+k^2) pi^2 / 4.
Vec reference_eigen(double s, const Grid2D& grid, int jk_max);

struct Table1Row {
    double h_label = 0.0;
    double s = 0.0;
    double l2_error = 0.0;
    double order = 0.0;  // meaningful only when has_order
    bool has_order = false;
};

// Errors e = spacing * ||u_h - reference||_2 for each (label, s), and orders
// log(e_{i+1}/e_i)/log(h_{i+1}/h_i) down each label column.
std::vector<Table1Row> run_table1(const std::vector<double>& h_labels, const Vec& s_list,
                                  const ReimModel& model, int jk_max = 1999, int threads = 1);

// columns h,s,l2_error,order; scientific with 6 significant digits
void write_table1_csv(const std::vector<Table1Row>& rows, const std::string& path);

}  // namespace reim
