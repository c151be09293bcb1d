#include "reim/fracpde.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "reim/parallel.hpp"

namespace reim {

Grid2D Grid2D::from_interior(int m) {
    if (m < 1)
        throw std::invalid_argument("Grid2D: at least one interior point required");
    Grid2D g;
    g.M = m;
    g.spacing = 2.0 / (m + 1);
    return g;
}

Grid2D Grid2D::from_table_label_log2(int p) {
    if (p < 1)
        throw std::invalid_argument("Grid2D: label exponent must be >= 1");
    return from_interior((1 << p) - 1);
}

SparseOperator laplacian_5pt(int m, double spacing) {
    if (m < 1)
        throw std::invalid_argument("laplacian_5pt: at least one interior point required");
    const double diag = 4.0 / (spacing * spacing);
    const double off = -1.0 / (spacing * spacing);
    SparseOperator a;
    a.n = m * m;
    a.symmetric = true;
    a.row_ptr.assign(a.n + 1, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            // ascending column order within the row: (i-1,j),(i,j-1),(i,j),(i,j+1),(i+1,j)
            if (i > 0) { a.col_idx.push_back((i - 1) * m + j); a.vals.push_back(off); }
            if (j > 0) { a.col_idx.push_back(i * m + j - 1); a.vals.push_back(off); }
            a.col_idx.push_back(i * m + j);
            a.vals.push_back(diag);
            if (j < m - 1) { a.col_idx.push_back(i * m + j + 1); a.vals.push_back(off); }
            if (i < m - 1) { a.col_idx.push_back((i + 1) * m + j); a.vals.push_back(off); }
            a.row_ptr[i * m + j + 1] = static_cast<int>(a.col_idx.size());
        }
    }
    return a;
}

SparseOperator assemble_laplacian_2d(const Grid2D& grid) {
    return laplacian_5pt(grid.M, grid.spacing);
}

SpectralBounds spectral_bounds(const Grid2D& grid, std::optional<double> override_lambda) {
    const double h = grid.spacing;
    const double sin1 = std::sin(std::numbers::pi * h / 4.0);
    SpectralBounds b;
    b.lambda_min_lb = 8.0 * sin1 * sin1 / (h * h);
    b.lambda_max_ub = override_lambda ? *override_lambda : std::max(8.0 / (h * h), 1e6);
    if (!(b.lambda_min_lb > 0.0) || !(b.lambda_min_lb < b.lambda_max_ub))
        throw std::invalid_argument("spectral_bounds: bounds out of order");
    return b;
}

double default_eta(const SpectralBounds& bounds) {
    const double ratio = bounds.lambda_min_lb / bounds.lambda_max_ub;
    const double floored = std::pow(10.0, std::floor(std::log10(ratio)));
    return std::min(1e-6, floored);
}

Vec solve_fractional(const SparseOperator& a, const SpectralBounds& bounds, double s,
                     const Vec& f, const ReimModel& model, int threads) {
    const double lam = bounds.lambda_max_ub;
    if (model.interval.lo > bounds.lambda_min_lb / lam * (1.0 + 1e-12))
        throw std::invalid_argument("solve_fractional: model interval misses the spectrum");
    const PartialFraction pf = interpolate(model, TargetFunction::power_neg(s));
    const SparseOperator scaled = SparseOperator::scaled(a, 1.0 / lam);
    const double fscale = std::pow(lam, -s);
    Vec rhs(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = f[i] * fscale;
    return pf_apply_shifted(scaled, pf, rhs, 1e-12, threads);
}

Vec dense_oracle_solve(const DenseMatrix& a, double s, const Vec& f) {
    const EigenDecomposition eig = dense_sym_eigen(a);
    const int n = a.rows;
    if (static_cast<int>(f.size()) != n)
        throw std::invalid_argument("dense_oracle_solve: size mismatch");
    if (!(eig.eigenvalues.front() > 0.0))
        throw std::invalid_argument("dense_oracle_solve: matrix is not positive definite");
    Vec coef(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += eig.eigenvectors.at(i, k) * f[i];
        coef[k] = dot * std::pow(eig.eigenvalues[k], -s);
    }
    Vec out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += eig.eigenvectors.at(i, k) * coef[k];
        out[i] = acc;
    }
    return out;
}

Vec reference_eigen(double s, const Grid2D& grid, int jk_max) {
    if (jk_max < 1)
        throw std::invalid_argument("reference_eigen: jk_max must be >= 1");
    const int m = grid.M;
    const double pi = std::numbers::pi;
    std::vector<int> odd;
    for (int j = 1; j <= jk_max; j += 2) odd.push_back(j);
    const int K = static_cast<int>(odd.size());

    // sine samples: S(i,a) = sin(j_a * pi * (x_i + 1) / 2), x_i interior
    DenseMatrix sine(m, K);
    for (int i = 0; i < m; ++i) {
        const double xi = (i + 1) * grid.spacing;  // x + 1
        for (int a = 0; a < K; ++a) sine.at(i, a) = std::sin(odd[a] * pi * xi / 2.0);
    }

    DenseMatrix coef(K, K);
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) {
            const double j = odd[a], k = odd[b];
            const double lambda = (j * j + k * k) * pi * pi / 4.0;
            coef.at(a, b) = std::pow(lambda, -s) * 16.0 / (pi * pi * j * k);
        }

    // u = S * coef * S^T, evaluated as two dense products
    DenseMatrix tmp(m, K);
    for (int i = 0; i < m; ++i)
        for (int b = 0; b < K; ++b) {
            double acc = 0.0;
            for (int a = 0; a < K; ++a) acc += sine.at(i, a) * coef.at(a, b);
            tmp.at(i, b) = acc;
        }
    Vec u(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double acc = 0.0;
            for (int b = 0; b < K; ++b) acc += tmp.at(i, b) * sine.at(j, b);
            u[static_cast<std::size_t>(i) * m + j] = acc;
        }
    return u;
}

std::vector<Table1Row> run_table1(const std::vector<double>& h_labels, const Vec& s_list,
                                  const ReimModel& model, int jk_max, int threads) {
    for (std::size_t i = 1; i < h_labels.size(); ++i)
        if (!(h_labels[i] < h_labels[i - 1]))
            throw std::invalid_argument("run_table1: labels must strictly decrease");

    std::vector<Table1Row> rows;
    for (double s : s_list) {
        double prev_err = 0.0;
        for (std::size_t i = 0; i < h_labels.size(); ++i) {
            const double label = h_labels[i];
            const int m = static_cast<int>(std::lround(1.0 / label)) - 1;
            const Grid2D grid = Grid2D::from_interior(m);
            const SparseOperator a = assemble_laplacian_2d(grid);
            const SpectralBounds bounds = spectral_bounds(grid);
            const Vec f(grid.size(), 1.0);
            const Vec u = solve_fractional(a, bounds, s, f, model, threads);
            const Vec ref = reference_eigen(s, grid, jk_max);
            double acc = 0.0;
            for (std::size_t k = 0; k < u.size(); ++k) {
                const double d = u[k] - ref[k];
                acc += d * d;
            }
            const double err = grid.spacing * std::sqrt(acc);

            Table1Row row;
            row.h_label = label;
            row.s = s;
            row.l2_error = err;
            if (i > 0) {
                row.order = std::log(err / prev_err) / std::log(label / h_labels[i - 1]);
                row.has_order = true;
            }
            prev_err = err;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_table1_csv(const std::vector<Table1Row>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_table1_csv: cannot open " + path);
    out << "h,s,l2_error,order\n";
    char buf[128];
    for (const Table1Row& r : rows) {
        if (r.has_order)
            std::snprintf(buf, sizeof buf, "%.5e,%.5e,%.5e,%.5e\n", r.h_label, r.s, r.l2_error,
                          r.order);
        else
            std::snprintf(buf, sizeof buf, "%.5e,%.5e,%.5e,\n", r.h_label, r.s, r.l2_error);
        out << buf;
    }
}

}  // namespace reim
