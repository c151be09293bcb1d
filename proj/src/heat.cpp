#include "reim/heat.hpp"

#include <cmath>
#include <numbers>

#include "reim/greedy.hpp"
#include "reim/parallel.hpp"
#include "reim/targets.hpp"

namespace reim {

HeatGrid HeatGrid::from_interior(int m) {
    if (m < 1)
        throw std::invalid_argument("HeatGrid: at least one interior point required");
    HeatGrid g;
    g.M = m;
    g.h = 1.0 / (m + 1);
    return g;
}

HeatGrid HeatGrid::from_spacing_log2(int p) {
    if (p < 1)
        throw std::invalid_argument("HeatGrid: spacing exponent must be >= 1");
    return from_interior((1 << p) - 1);
}

SparseOperator assemble_laplacian_heat(const HeatGrid& grid) {
    return laplacian_5pt(grid.M, grid.h);
}

SpectralBounds heat_spectral_bounds(const HeatGrid& grid, std::optional<double> override_lambda) {
    const double h = grid.h;
    const double sin1 = std::sin(std::numbers::pi * h / 2.0);
    SpectralBounds b;
    b.lambda_min_lb = 8.0 * sin1 * sin1 / (h * h);
    b.lambda_max_ub = override_lambda ? *override_lambda : std::max(8.0 / (h * h), 1e6);
    if (!(b.lambda_min_lb > 0.0) || !(b.lambda_min_lb < b.lambda_max_ub))
        throw std::invalid_argument("heat_spectral_bounds: bounds out of order");
    return b;
}

Bdf2Coeffs bdf2_coeffs(double tau_m, double tau_m1) {
    if (!(tau_m > 0.0) || !(tau_m1 > 0.0))
        throw std::invalid_argument("bdf2_coeffs: step sizes must be positive");
    Bdf2Coeffs c;
    c.k1 = (2.0 * tau_m + tau_m1) / (tau_m * (tau_m + tau_m1));
    c.k0 = -(tau_m + tau_m1) / (tau_m1 * tau_m);
    c.km1 = tau_m / (tau_m1 * (tau_m + tau_m1));
    return c;
}

namespace {

Vec shifted_recip_apply(const SparseOperator& a, const SpectralBounds& bounds, double s,
                        double shift_d, const Vec& rhs_physical, const ReimModel& model,
                        int threads) {
    const double lam = bounds.lambda_max_ub;
    const PartialFraction pf =
        interpolate(model, TargetFunction::shifted_recip(s, shift_d));
    const SparseOperator scaled = SparseOperator::scaled(a, 1.0 / lam);
    const double fscale = std::pow(lam, -s);
    Vec rhs(rhs_physical.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = rhs_physical[i] * fscale;
    return pf_apply_shifted(scaled, pf, rhs, 1e-12, threads);
}

}  // namespace

Vec euler_step(const SparseOperator& a, const SpectralBounds& bounds, double s,
               const Vec& u_prev, const Vec& f_m, double tau, const ReimModel& model,
               int threads) {
    if (!(tau > 0.0))
        throw std::invalid_argument("euler_step: tau must be positive");
    const double lam_s = std::pow(bounds.lambda_max_ub, s);
    Vec rhs(u_prev.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = u_prev[i] / tau + f_m[i];
    return shifted_recip_apply(a, bounds, s, 1.0 / (tau * lam_s), rhs, model, threads);
}

Vec bdf2_step(const SparseOperator& a, const SpectralBounds& bounds, double s, const Vec& u_m,
              const Vec& u_m_1, const Vec& f_next, const Bdf2Coeffs& coeffs,
              const ReimModel& model, int threads) {
    const double lam_s = std::pow(bounds.lambda_max_ub, s);
    Vec rhs(u_m.size());
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = f_next[i] - coeffs.k0 * u_m[i] - coeffs.km1 * u_m_1[i];
    return shifted_recip_apply(a, bounds, s, coeffs.k1 / lam_s, rhs, model, threads);
}

double heat_time_factor(double t) {
    return std::exp(-t / 20.0) * std::cos(2.0 * std::numbers::pi * t);
}

namespace {

// sin(pi x) sin(pi y) over the interior nodes
Vec spatial_mode(const HeatGrid& grid) {
    const double pi = std::numbers::pi;
    Vec mode(grid.size());
    for (int i = 0; i < grid.M; ++i) {
        const double sx = std::sin(pi * (i + 1) * grid.h);
        for (int j = 0; j < grid.M; ++j)
            mode[static_cast<std::size_t>(i) * grid.M + j] =
                sx * std::sin(pi * (j + 1) * grid.h);
    }
    return mode;
}

double time_factor_derivative(double t) {
    const double pi = std::numbers::pi;
    return std::exp(-t / 20.0) *
           (-std::cos(2.0 * pi * t) / 20.0 - 2.0 * pi * std::sin(2.0 * pi * t));
}

}  // namespace

Vec heat_exact_solution(const HeatGrid& grid, double t) {
    Vec u = spatial_mode(grid);
    const double factor = heat_time_factor(t);
    for (double& v : u) v *= factor;
    return u;
}

Vec heat_forcing(const HeatGrid& grid, double t, double s, bool discrete_symbol) {
    const double pi = std::numbers::pi;
    double symbol = 2.0 * pi * pi;
    if (discrete_symbol) {
        const double sh = std::sin(pi * grid.h / 2.0);
        symbol = 8.0 * sh * sh / (grid.h * grid.h);
    }
    const double factor = time_factor_derivative(t) + std::pow(symbol, s) * heat_time_factor(t);
    Vec f = spatial_mode(grid);
    for (double& v : f) v *= factor;
    return f;
}

AdaptiveResult adaptive_run(const HeatGrid& grid, const HeatRunConfig& cfg,
                            const ReimModel& model) {
    if (!(cfg.tol > 0.0) || !(cfg.tau0 > 0.0) || !(cfg.t_final > 0.0))
        throw std::invalid_argument("adaptive_run: tol, tau0 and t_final must be positive");

    const SparseOperator a = assemble_laplacian_heat(grid);
    const SpectralBounds bounds = heat_spectral_bounds(grid);
    const double tau_min = 1e-8;
    const double tau_max = cfg.t_final / 10.0;

    AdaptiveResult out;
    Vec u_prev;                              // level m-1
    Vec u = heat_exact_solution(grid, 0.0);  // level m, starts at the initial condition
    double t = 0.0;
    double tau = cfg.tau0;
    double tau_prev = 0.0;
    int consecutive_rejections = 0;

    while (t < cfg.t_final) {
        if (tau > cfg.t_final - t) tau = cfg.t_final - t;
        const Vec f_next = heat_forcing(grid, t + tau, cfg.s, cfg.discrete_symbol);
        const Vec u_euler = euler_step(a, bounds, cfg.s, u, f_next, tau, model, cfg.threads);

        if (out.trace.accepted == 0) {
            // no second back level yet: bootstrap step accepted as proposed
            out.trace.steps.push_back({t + tau, tau, 0.0, true});
            ++out.trace.accepted;
            u_prev = u;
            u = u_euler;
            t += tau;
            tau_prev = tau;
            continue;
        }

        const Bdf2Coeffs coeffs = bdf2_coeffs(tau, tau_prev);
        const Vec u_bdf2 =
            bdf2_step(a, bounds, cfg.s, u, u_prev, f_next, coeffs, model, cfg.threads);
        double acc = 0.0;
        for (std::size_t i = 0; i < u_euler.size(); ++i) {
            const double d = u_euler[i] - u_bdf2[i];
            acc += d * d;
        }
        const double err = grid.h * std::sqrt(acc);
        const bool accepted = err <= cfg.tol;
        out.trace.steps.push_back({t + tau, tau, err, accepted});

        if (accepted) {
            ++out.trace.accepted;
            consecutive_rejections = 0;
            u_prev = u;
            u = u_euler;
            t += tau;
            tau_prev = tau;
        } else {
            ++out.trace.rejected;
            if (++consecutive_rejections > 100)
                throw std::runtime_error("adaptive_run: step controller failed to recover");
        }
        const double tau_new = 0.8 * tau * std::sqrt(cfg.tol / err);
        tau = std::min(std::max(tau_new, tau_min), tau_max);
    }

    out.u_final = u;
    const Vec exact = heat_exact_solution(grid, cfg.t_final);
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - exact[i];
        acc += d * d;
    }
    out.final_l2_error = grid.h * std::sqrt(acc);
    return out;
}

}  // namespace reim
