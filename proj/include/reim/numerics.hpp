// Dense and sparse linear algebra plus quadrature: every solver here is
// deliberately plain (pivoted LU, unpreconditioned CG, cyclic Jacobi) so the
// code stays auditable against the formulas it implements.
#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "reim/core.hpp"

namespace reim {

struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    Vec entries;  // row-major

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }
};

struct singular_matrix_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when CG hits its iteration cap; solvers that run one CG per pole
// annotate shift_index before rethrowing.
struct cg_failure : std::runtime_error {
    double final_residual;
    int shift_index;
    cg_failure(const std::string& what, double res, int idx = -1)
        : std::runtime_error(what), final_residual(res), shift_index(idx) {}
};

// Symmetric sparse matrix in CSR form; every diagonal entry is stored even
// when zero so shifted applications never change the pattern.
struct SparseOperator {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col_idx;
    Vec vals;
    bool symmetric = true;

    // y = (A + shift I) x
    void apply(const Vec& x, Vec& y, double shift = 0.0) const;

    static SparseOperator from_dense(const DenseMatrix& a);
    static SparseOperator scaled(const SparseOperator& a, double factor);
};

struct Quadrature {
    Vec nodes;
    Vec weights;
};

DenseMatrix cauchy_matrix(const Vec& b, const Vec& x);

LuFactor lu_factor(const DenseMatrix& a);
Vec lu_solve(const LuFactor& f, const Vec& rhs);
Vec solve_dense(const DenseMatrix& a, const Vec& rhs);

// Integral of 1/((x+b)(x+b')) over the interval, with a limit branch when the
// parameters nearly coincide.
double gram_entry(double b, double bp, const Interval& iv);

// Reference Gauss-Legendre rule on [-1,1].
Quadrature gauss_legendre_rule(int order);

// Composite Gauss-Legendre on geometrically graded panels.
Quadrature gauss_legendre_panels(const Interval& iv, int panels, int order);

struct CgResult {
    Vec x;
    int iterations = 0;
};

CgResult cg_solve(const SparseOperator& a, double shift, const Vec& rhs, double rel_tol);

struct EigenDecomposition {
    Vec eigenvalues;        // ascending
    DenseMatrix eigenvectors;  // column k pairs with eigenvalues[k]
};

EigenDecomposition dense_sym_eigen(const DenseMatrix& a);

// Minimum-residual solution of an overdetermined system via Householder QR
// with column pivoting; rank deficiency below rank_tol is an error.
Vec lstsq_qr(const DenseMatrix& a, const Vec& rhs, double rank_tol = 1e-13);

}  // namespace reim
