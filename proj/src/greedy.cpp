#include "reim/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "reim/numerics.hpp"

namespace reim {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Lebesgue function max over arbitrary points for a factorized model.
double lebesgue_over_points(const ReimModel& model, const Vec& points) {
    const int n = model.size();
    if (n == 0 || points.empty()) return 0.0;
    // columns of G^{-1} are the cardinal residue vectors
    DenseMatrix w(n, n);
    Vec e(n, 0.0);
    for (int i = 0; i < n; ++i) {
        e[i] = 1.0;
        const Vec col = lu_solve(model.cauchy_factorization, e);
        e[i] = 0.0;
        for (int j = 0; j < n; ++j) w.at(j, i) = col[j];
    }
    double best = 0.0;
    Vec g(n);
    for (double x : points) {
        for (int j = 0; j < n; ++j) g[j] = 1.0 / (x + model.poles_b[j]);
        double lam = 0.0;
        for (int i = 0; i < n; ++i) {
            double psi = 0.0;
            for (int j = 0; j < n; ++j) psi += w.at(j, i) * g[j];
            lam += std::abs(psi);
        }
        best = std::max(best, lam);
    }
    return best;
}

}  // namespace

ReimModel reim_build(const SampleGrid& dictionary_b, const SampleGrid& sigma, int n,
                     const Interval& interval) {
    const int nb = static_cast<int>(dictionary_b.points.size());
    const int ns = static_cast<int>(sigma.points.size());
    if (n < 0 || n > std::min(nb, ns))
        throw std::invalid_argument("reim_build: n exceeds candidate counts");
    for (double b : dictionary_b.points)
        if (!(b > 0.0))
            throw std::invalid_argument("reim_build: dictionary parameters must be positive");
    for (double x : sigma.points)
        if (!(x >= interval.lo) || !(x <= interval.hi))
            throw std::invalid_argument("reim_build: sample grid leaves the interval");

    // full dictionary table, one column per candidate
    std::vector<Vec> dict(nb, Vec(ns));
    for (int j = 0; j < nb; ++j)
        for (int i = 0; i < ns; ++i)
            dict[j][i] = 1.0 / (sigma.points[i] + dictionary_b.points[j]);

    std::vector<char> b_used(nb, 0), x_used(ns, 0);
    ReimModel model;
    model.interval = interval;

    Vec coef;      // scratch: current interpolation coefficients
    Vec rhs;       // scratch: candidate values at selected points
    Vec residual(ns), best_residual(ns);
    std::vector<int> sel_b, sel_x;

    for (int m = 0; m < n; ++m) {
        int best_b = -1;
        double best_e = -1.0;
        for (int j = 0; j < nb; ++j) {
            if (b_used[j]) continue;
            if (m == 0) {
                residual = dict[j];
            } else {
                rhs.resize(m);
                for (int i = 0; i < m; ++i)
                    rhs[i] = 1.0 / (sigma.points[sel_x[i]] + dictionary_b.points[j]);
                coef = lu_solve(model.cauchy_factorization, rhs);
                residual = dict[j];
                for (int i = 0; i < m; ++i) {
                    const double c = coef[i];
                    const Vec& col = dict[sel_b[i]];
                    for (int k = 0; k < ns; ++k) residual[k] -= c * col[k];
                }
            }
            double e = 0.0;
            for (int k = 0; k < ns; ++k) {
                if (x_used[k]) continue;
                e = std::max(e, std::abs(residual[k]));
            }
            const bool better =
                e > best_e ||
                (e == best_e && best_b >= 0 &&
                 dictionary_b.points[j] < dictionary_b.points[best_b]);
            if (better) {
                best_e = e;
                best_b = j;
                best_residual = residual;
            }
        }
        if (best_e <= 1e-13) break;  // dictionary resolved; stop before G degenerates

        int best_x = -1;
        double best_r = -1.0;
        for (int k = 0; k < ns; ++k) {
            if (x_used[k]) continue;
            const double r = std::abs(best_residual[k]);
            const bool better =
                r > best_r ||
                (r == best_r && best_x >= 0 && sigma.points[k] < sigma.points[best_x]);
            if (better) {
                best_r = r;
                best_x = k;
            }
        }

        b_used[best_b] = 1;
        x_used[best_x] = 1;
        sel_b.push_back(best_b);
        sel_x.push_back(best_x);
        model.poles_b.push_back(dictionary_b.points[best_b]);
        model.interp_x.push_back(sigma.points[best_x]);
        model.cauchy_factorization = lu_factor(cauchy_matrix(model.poles_b, model.interp_x));
        model.trace.sup_errors.push_back(best_e);
        model.trace.lebesgue.push_back(lebesgue_over_points(model, sigma.points));
    }
    return model;
}

Vec interpolate_values(const ReimModel& model, const Vec& values) {
    if (static_cast<int>(values.size()) != model.size())
        throw std::invalid_argument("interpolate_values: size mismatch");
    if (model.size() == 0) return {};
    return lu_solve(model.cauchy_factorization, values);
}

PartialFraction interpolate(const ReimModel& model, const TargetFunction& f) {
    Vec values(model.size());
    for (int i = 0; i < model.size(); ++i) values[i] = f(model.interp_x[i]);
    PartialFraction pf;
    pf.poles_b = model.poles_b;
    pf.residues_c = interpolate_values(model, values);
    return pf;
}

double sup_error(const PartialFraction& pf, const TargetFunction& f, const SampleGrid& grid) {
    double best = 0.0;
    for (double x : grid.points)
        best = std::max(best, std::abs(f(x) - pf_eval(pf, x)));
    return best;
}

double lebesgue_estimate(const ReimModel& model, const SampleGrid& grid) {
    return lebesgue_over_points(model, grid.points);
}

PartialFraction least_squares_fit(const TargetFunction& f, const Vec& poles_b,
                                  const SampleGrid& sigma) {
    const int n = static_cast<int>(poles_b.size());
    const int m = static_cast<int>(sigma.points.size());
    DenseMatrix a(m, n);
    Vec rhs(m);
    for (int k = 0; k < m; ++k) {
        const double x = sigma.points[k];
        rhs[k] = f(x);
        for (int i = 0; i < n; ++i) a.at(k, i) = 1.0 / (x + poles_b[i]);
    }
    PartialFraction pf;
    pf.poles_b = poles_b;
    pf.residues_c = lstsq_qr(a, rhs, 1e-13);
    return pf;
}

ReimConfig ReimConfig::power_preset(const Interval& iv) {
    ReimConfig cfg;
    cfg.interval = iv;
    cfg.b_lo = iv.lo / 100.0;
    cfg.b_hi = 1e3 * iv.hi;
    cfg.b_count = 36;
    return cfg;
}

ReimConfig ReimConfig::shifted_preset(const Interval& iv) {
    ReimConfig cfg;
    cfg.interval = iv;
    cfg.b_lo = iv.lo / 10.0;
    cfg.b_hi = 10.0 * iv.hi;
    cfg.b_count = 300;
    return cfg;
}

ReimConfig ReimConfig::matfun_preset() {
    ReimConfig cfg;
    cfg.interval = Interval(1.0, 1e6);
    cfg.b_lo = 1e-1;
    cfg.b_hi = 1e7;
    cfg.b_count = 300;
    return cfg;
}

ReimModel build_model(const ReimConfig& cfg) {
    const SampleGrid b = geometric_grid(Interval(cfg.b_lo, cfg.b_hi), cfg.b_count);
    const SampleGrid sigma = geometric_grid(cfg.interval, cfg.sigma_count);
    ReimModel model = reim_build(b, sigma, cfg.n, cfg.interval);
    model.meta["b_lo"] = fmt17(cfg.b_lo);
    model.meta["b_hi"] = fmt17(cfg.b_hi);
    model.meta["b_count"] = std::to_string(cfg.b_count);
    model.meta["sigma_count"] = std::to_string(cfg.sigma_count);
    model.meta["n"] = std::to_string(cfg.n);
    return model;
}

}  // namespace reim
