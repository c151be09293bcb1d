#include "reim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reim {

void SparseOperator::apply(const Vec& x, Vec& y, double shift) const {
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            acc += vals[k] * x[col_idx[k]];
        y[i] = acc + shift * x[i];
    }
}

SparseOperator SparseOperator::from_dense(const DenseMatrix& a) {
    if (a.rows != a.cols)
        throw std::invalid_argument("SparseOperator::from_dense: square matrix required");
    SparseOperator s;
    s.n = a.rows;
    s.row_ptr.assign(s.n + 1, 0);
    for (int i = 0; i < s.n; ++i) {
        for (int j = 0; j < s.n; ++j) {
            // keep the diagonal unconditionally so shifts never alter the pattern
            if (a.at(i, j) != 0.0 || i == j) {
                s.col_idx.push_back(j);
                s.vals.push_back(a.at(i, j));
            }
        }
        s.row_ptr[i + 1] = static_cast<int>(s.col_idx.size());
    }
    return s;
}

SparseOperator SparseOperator::scaled(const SparseOperator& a, double factor) {
    SparseOperator s = a;
    for (double& v : s.vals) v *= factor;
    return s;
}

DenseMatrix cauchy_matrix(const Vec& b, const Vec& x) {
    if (b.size() != x.size())
        throw std::invalid_argument("cauchy_matrix: b and x must have equal length");
    const int n = static_cast<int>(b.size());
    DenseMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double den = x[i] + b[j];
            if (den == 0.0)
                throw std::invalid_argument("cauchy_matrix: x_i + b_j = 0");
            g.at(i, j) = 1.0 / den;
        }
    return g;
}

LuFactor lu_factor(const DenseMatrix& a) {
    if (a.rows != a.cols)
        throw std::invalid_argument("lu_factor: square matrix required");
    const int n = a.rows;
    LuFactor f;
    f.n = n;
    f.lu = a.entries;
    f.piv.resize(n);
    Vec& lu = f.lu;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu[static_cast<std::size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu[static_cast<std::size_t>(i) * n + k]);
            if (v > best) { best = v; p = i; }
        }
        if (best < 1e-300)
            throw singular_matrix_error("lu_factor: pivot below threshold");
        f.piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j)
                std::swap(lu[static_cast<std::size_t>(k) * n + j], lu[static_cast<std::size_t>(p) * n + j]);
        const double pivot = lu[static_cast<std::size_t>(k) * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double m = lu[static_cast<std::size_t>(i) * n + k] / pivot;
            lu[static_cast<std::size_t>(i) * n + k] = m;
            for (int j = k + 1; j < n; ++j)
                lu[static_cast<std::size_t>(i) * n + j] -= m * lu[static_cast<std::size_t>(k) * n + j];
        }
    }
    return f;
}

Vec lu_solve(const LuFactor& f, const Vec& rhs) {
    if (static_cast<int>(rhs.size()) != f.n)
        throw std::invalid_argument("lu_solve: size mismatch");
    const int n = f.n;
    Vec x = rhs;
    for (int k = 0; k < n; ++k)
        if (f.piv[k] != k) std::swap(x[k], x[f.piv[k]]);
    for (int i = 1; i < n; ++i) {
        double acc = x[i];
        for (int j = 0; j < i; ++j)
            acc -= f.lu[static_cast<std::size_t>(i) * n + j] * x[j];
        x[i] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
        double acc = x[i];
        for (int j = i + 1; j < n; ++j)
            acc -= f.lu[static_cast<std::size_t>(i) * n + j] * x[j];
        x[i] = acc / f.lu[static_cast<std::size_t>(i) * n + i];
    }
    return x;
}

Vec solve_dense(const DenseMatrix& a, const Vec& rhs) {
    return lu_solve(lu_factor(a), rhs);
}

double gram_entry(double b, double bp, const Interval& iv) {
    if (!(b > 0.0) || !(bp > 0.0))
        throw std::invalid_argument("gram_entry: parameters must be positive");
    if (bp < b) std::swap(b, bp);  // canonical order makes symmetry bit-exact
    const double lo = iv.lo, hi = iv.hi;
    // the log-difference quotient cancels catastrophically for b ~ b'
    if (bp - b < 1e-10 * bp) return 1.0 / (lo + b) - 1.0 / (hi + b);
    return std::log(((hi + b) * (lo + bp)) / ((lo + b) * (hi + bp))) / (bp - b);
}

// Nodes and weights of the order-point rule on [-1,1] by Newton iteration on
// the three-term recurrence.
Quadrature gauss_legendre_rule(int order) {
    if (order < 1)
        throw std::invalid_argument("gauss_legendre_rule: order must be >= 1");
    Quadrature q;
    Vec& nodes = q.nodes;
    Vec& weights = q.weights;
    nodes.resize(order);
    weights.resize(order);
    const double pi = std::numbers::pi;
    for (int i = 0; i < order; ++i) {
        // Chebyshev-like initial guess for the i-th root
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[order - 1 - i] = x;
        weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

Quadrature gauss_legendre_panels(const Interval& iv, int panels, int order) {
    if (panels < 1)
        throw std::invalid_argument("gauss_legendre_panels: panels must be >= 1");
    const Quadrature base = gauss_legendre_rule(order);
    const Vec& base_x = base.nodes;
    const Vec& base_w = base.weights;
    const SampleGrid edges = geometric_grid(iv, panels + 1);
    Quadrature q;
    q.nodes.reserve(static_cast<std::size_t>(panels) * order);
    q.weights.reserve(static_cast<std::size_t>(panels) * order);
    for (int p = 0; p < panels; ++p) {
        const double a = edges.points[p], b = edges.points[p + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int k = 0; k < order; ++k) {
            q.nodes.push_back(mid + half * base_x[k]);
            q.weights.push_back(half * base_w[k]);
        }
    }
    return q;
}

CgResult cg_solve(const SparseOperator& a, double shift, const Vec& rhs, double rel_tol) {
    const int n = a.n;
    CgResult out;
    out.x.assign(n, 0.0);
    double rhs_norm = 0.0;
    for (double v : rhs) rhs_norm += v * v;
    rhs_norm = std::sqrt(rhs_norm);
    if (rhs_norm == 0.0) return out;

    Vec r = rhs, p = rhs, ap(n);
    double rr = rhs_norm * rhs_norm;
    const double stop = rel_tol * rhs_norm;
    const int cap = 10 * n;
    for (int it = 0; it < cap; ++it) {
        if (std::sqrt(rr) <= stop) return out;
        a.apply(p, ap, shift);
        double pap = 0.0;
        for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
        const double alpha = rr / pap;
        for (int i = 0; i < n; ++i) {
            out.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rr_new = 0.0;
        for (double v : r) rr_new += v * v;
        const double beta = rr_new / rr;
        rr = rr_new;
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        ++out.iterations;
    }
    if (std::sqrt(rr) <= stop) return out;
    throw cg_failure("cg_solve: iteration cap reached", std::sqrt(rr) / rhs_norm);
}

EigenDecomposition dense_sym_eigen(const DenseMatrix& a) {
    if (a.rows != a.cols)
        throw std::invalid_argument("dense_sym_eigen: square matrix required");
    const int n = a.rows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(a.at(i, j) - a.at(j, i)) > 1e-12 * (1.0 + std::abs(a.at(i, j))))
                throw std::invalid_argument("dense_sym_eigen: matrix is not symmetric");

    DenseMatrix w = a;
    DenseMatrix v(n, n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;

    double norm_f = 0.0;
    for (double e : a.entries) norm_f += e * e;
    norm_f = std::sqrt(norm_f);
    const double tol = 1e-12 * norm_f;

    // cyclic Jacobi sweeps until the off-diagonal mass is negligible
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                off += 2.0 * w.at(i, j) * w.at(i, j);
        if (std::sqrt(off) <= tol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = w.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (w.at(q, q) - w.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double wkp = w.at(k, p), wkq = w.at(k, q);
                    w.at(k, p) = c * wkp - s * wkq;
                    w.at(k, q) = s * wkp + c * wkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double wpk = w.at(p, k), wqk = w.at(q, k);
                    w.at(p, k) = c * wpk - s * wqk;
                    w.at(q, k) = s * wpk + c * wqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    Vec diag(n);
    for (int i = 0; i < n; ++i) diag[i] = w.at(i, i);
    std::sort(order.begin(), order.end(), [&](int l, int r) { return diag[l] < diag[r]; });
    out.eigenvectors = DenseMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (int i = 0; i < n; ++i)
            out.eigenvectors.at(i, k) = v.at(i, order[k]);
    }
    return out;
}

Vec lstsq_qr(const DenseMatrix& a, const Vec& rhs, double rank_tol) {
    const int m = a.rows, n = a.cols;
    if (static_cast<int>(rhs.size()) != m)
        throw std::invalid_argument("lstsq_qr: size mismatch");
    if (m < n)
        throw std::invalid_argument("lstsq_qr: underdetermined system");

    DenseMatrix r = a;
    Vec y = rhs;
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    Vec col_norm2(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            col_norm2[j] += r.at(i, j) * r.at(i, j);
    const double scale0 = std::sqrt(*std::max_element(col_norm2.begin(), col_norm2.end()));

    for (int k = 0; k < n; ++k) {
        // pivot the column of largest remaining norm to the front
        int p = k;
        double best = 0.0;
        for (int j = k; j < n; ++j) {
            double nrm = 0.0;
            for (int i = k; i < m; ++i) nrm += r.at(i, j) * r.at(i, j);
            if (nrm > best) { best = nrm; p = j; }
        }
        if (std::sqrt(best) <= rank_tol * scale0)
            throw singular_matrix_error("lstsq_qr: rank deficient below tolerance");
        if (p != k) {
            for (int i = 0; i < m; ++i) std::swap(r.at(i, k), r.at(i, p));
            std::swap(perm[k], perm[p]);
        }
        double alpha = 0.0;
        for (int i = k; i < m; ++i) alpha += r.at(i, k) * r.at(i, k);
        alpha = std::sqrt(alpha);
        if (r.at(k, k) > 0.0) alpha = -alpha;
        Vec vk(m, 0.0);
        vk[k] = r.at(k, k) - alpha;
        for (int i = k + 1; i < m; ++i) vk[i] = r.at(i, k);
        double vtv = 0.0;
        for (int i = k; i < m; ++i) vtv += vk[i] * vk[i];
        if (vtv == 0.0) continue;
        for (int j = k; j < n; ++j) {
            double dot = 0.0;
            for (int i = k; i < m; ++i) dot += vk[i] * r.at(i, j);
            const double f = 2.0 * dot / vtv;
            for (int i = k; i < m; ++i) r.at(i, j) -= f * vk[i];
        }
        double dot = 0.0;
        for (int i = k; i < m; ++i) dot += vk[i] * y[i];
        const double f = 2.0 * dot / vtv;
        for (int i = k; i < m; ++i) y[i] -= f * vk[i];
    }

    Vec z(n);
    for (int i = n - 1; i >= 0; --i) {
        double acc = y[i];
        for (int j = i + 1; j < n; ++j) acc -= r.at(i, j) * z[j];
        z[i] = acc / r.at(i, i);
    }
    Vec x(n);
    for (int j = 0; j < n; ++j) x[perm[j]] = z[j];
    return x;
}

}  // namespace reim
