#include "reim/oga.hpp"

#include <algorithm>
#include <cmath>

namespace reim {

namespace {

double quad_inner(const TargetFunction& f, double b, const Quadrature& quad) {
    double acc = 0.0;
    for (std::size_t i = 0; i < quad.nodes.size(); ++i)
        acc += quad.weights[i] * f(quad.nodes[i]) / (quad.nodes[i] + b);
    return acc;
}

double quad_norm2(const TargetFunction& f, const Quadrature& quad) {
    double acc = 0.0;
    for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
        const double v = f(quad.nodes[i]);
        acc += quad.weights[i] * v * v;
    }
    return acc;
}

Vec gram_solve(const Vec& basis_b, const Interval& interval, const Vec& moments) {
    const int n = static_cast<int>(basis_b.size());
    DenseMatrix gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gram.at(i, j) = gram_entry(basis_b[i], basis_b[j], interval);
    return solve_dense(gram, moments);
}

}  // namespace

PartialFraction project_l2(const TargetFunction& f, const Vec& basis_b, const Interval& interval,
                           const Quadrature& quad) {
    PartialFraction pf;
    pf.poles_b = basis_b;
    if (basis_b.empty()) return pf;
    Vec moments(basis_b.size());
    for (std::size_t i = 0; i < basis_b.size(); ++i)
        moments[i] = quad_inner(f, basis_b[i], quad);
    pf.residues_c = gram_solve(basis_b, interval, moments);
    return pf;
}

RogaResult roga_run(const TargetFunction& f, const SampleGrid& dictionary_b, int n,
                    const Interval& interval, const Quadrature& quad) {
    const int nb = static_cast<int>(dictionary_b.points.size());
    if (n < 0 || n > nb)
        throw std::invalid_argument("roga_run: n exceeds candidate count");
    for (double b : dictionary_b.points)
        if (!(b > 0.0))
            throw std::invalid_argument("roga_run: dictionary parameters must be positive");

    Vec moments_all(nb);
    for (int j = 0; j < nb; ++j)
        moments_all[j] = quad_inner(f, dictionary_b.points[j], quad);
    const double norm_f2 = quad_norm2(f, quad);

    RogaResult out;
    std::vector<char> used(nb, 0);
    Vec sel_moments;
    Vec coef;

    for (int m = 0; m < n; ++m) {
        int best = -1;
        double best_e = -1.0;
        for (int j = 0; j < nb; ++j) {
            if (used[j]) continue;
            // <g_j, f - f_m> with f_m = sum_i coef_i g_i
            double corr = moments_all[j];
            for (std::size_t i = 0; i < out.selected_b.size(); ++i)
                corr -= coef[i] * gram_entry(dictionary_b.points[j], out.selected_b[i], interval);
            const double e = std::abs(corr);
            if (e > best_e || (e == best_e && best >= 0 &&
                               dictionary_b.points[j] < dictionary_b.points[best])) {
                best_e = e;
                best = j;
            }
        }
        used[best] = 1;
        out.selected_b.push_back(dictionary_b.points[best]);
        sel_moments.push_back(moments_all[best]);
        coef = gram_solve(out.selected_b, interval, sel_moments);

        double fm_inner = 0.0;
        for (std::size_t i = 0; i < coef.size(); ++i) fm_inner += coef[i] * sel_moments[i];
        out.l2_errors.push_back(std::sqrt(std::max(norm_f2 - fm_inner, 0.0)));
    }
    out.expansion.poles_b = out.selected_b;
    out.expansion.residues_c = coef;
    return out;
}

Quadrature roga_default_quadrature(const Interval& interval) {
    return gauss_legendre_panels(interval, 200, 16);
}

}  // namespace reim
