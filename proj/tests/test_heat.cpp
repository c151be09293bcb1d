#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "reim/heat.hpp"
#include "reim/rng.hpp"
#include "test_helpers.hpp"

using namespace reim;
using reim::testing::shifted_model;

namespace {

DenseMatrix to_dense(const SparseOperator& a) {
    DenseMatrix d(a.n, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            d.at(i, a.col_idx[k]) = a.vals[k];
    return d;
}

double l2_norm(const Vec& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

SparseOperator scaled_identity(int n, double lambda) {
    DenseMatrix d(n, n);
    for (int i = 0; i < n; ++i) d.at(i, i) = lambda;
    return SparseOperator::from_dense(d);
}

}  // namespace

TEST_CASE("bdf2 coefficients on hand examples") {
    const Bdf2Coeffs eq = bdf2_coeffs(0.1, 0.1);
    CHECK(eq.k1 == doctest::Approx(15.0).epsilon(1e-14));
    CHECK(eq.k0 == doctest::Approx(-20.0).epsilon(1e-14));
    CHECK(eq.km1 == doctest::Approx(5.0).epsilon(1e-14));

    const Bdf2Coeffs uneq = bdf2_coeffs(0.1, 0.2);
    CHECK(uneq.k1 == doctest::Approx(40.0 / 3.0).epsilon(1e-14));
    CHECK(uneq.k0 == doctest::Approx(-15.0).epsilon(1e-14));
    CHECK(uneq.km1 == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(bdf2_coeffs(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(bdf2_coeffs(0.1, -0.1), std::invalid_argument);
}

TEST_CASE("bdf2 weights annihilate constants and differentiate polynomials") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const double tau_m = rng.log_uniform(1e-6, 1.0);
        const double tau_m1 = rng.log_uniform(1e-6, 1.0);
        const Bdf2Coeffs c = bdf2_coeffs(tau_m, tau_m1);
        const double scale = std::abs(c.k1) + std::abs(c.k0) + std::abs(c.km1);
        // constants
        CHECK(std::abs(c.k1 + c.k0 + c.km1) <= 1e-12 * scale);
        // u = t at evaluation time 0: derivative 1
        const double t1 = c.k0 * (-tau_m), t2 = c.km1 * (-tau_m - tau_m1);
        CHECK(std::abs(t1 + t2 - 1.0) <= 1e-12 * (std::abs(t1) + std::abs(t2) + 1.0));
        // u = t^2 at evaluation time 0: derivative 0
        const double q1 = c.k0 * tau_m * tau_m;
        const double q2 = c.km1 * (tau_m + tau_m1) * (tau_m + tau_m1);
        CHECK(std::abs(q1 + q2) <= 1e-12 * (std::abs(q1) + std::abs(q2)));
    }
}

TEST_CASE("heat grid and spectral bounds") {
    const HeatGrid g = HeatGrid::from_spacing_log2(3);
    CHECK(g.M == 7);
    CHECK(g.h == doctest::Approx(0.125).epsilon(1e-15));

    const SpectralBounds b = heat_spectral_bounds(g);
    const double pi = std::numbers::pi;
    const double expect = 8.0 * std::pow(std::sin(pi * g.h / 2.0), 2) / (g.h * g.h);
    CHECK(b.lambda_min_lb == doctest::Approx(expect).epsilon(1e-14));
    CHECK(b.lambda_max_ub == 1e6);
    CHECK(heat_spectral_bounds(g, 123.0).lambda_max_ub == 123.0);

    // discrete eigenvalue checked against the dense decomposition
    const EigenDecomposition eig = dense_sym_eigen(to_dense(assemble_laplacian_heat(g)));
    CHECK(eig.eigenvalues.front() == doctest::Approx(b.lambda_min_lb).epsilon(1e-10));
}

TEST_CASE("manufactured solution pieces") {
    CHECK(heat_time_factor(0.0) == 1.0);
    CHECK(std::abs(heat_time_factor(0.25)) <= 1e-15);  // cos(pi/2) factor

    const HeatGrid g = HeatGrid::from_interior(3);
    const Vec u0 = heat_exact_solution(g, 0.0);
    const double pi = std::numbers::pi;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double x = (i + 1) * g.h, y = (j + 1) * g.h;
            CHECK(u0[i * 3 + j] ==
                  doctest::Approx(std::sin(pi * x) * std::sin(pi * y)).epsilon(1e-14));
        }
}

TEST_CASE("forcing uses the requested symbol") {
    const HeatGrid g = HeatGrid::from_interior(5);
    const double s = 0.6, t = 0.37, pi = std::numbers::pi;
    const double mu_cont = 2.0 * pi * pi;
    const double mu_disc = 8.0 * std::pow(std::sin(pi * g.h / 2.0), 2) / (g.h * g.h);
    const double dt = 1e-6;
    const double td = (heat_time_factor(t + dt) - heat_time_factor(t - dt)) / (2.0 * dt);

    const Vec fc = heat_forcing(g, t, s, false);
    const Vec fd = heat_forcing(g, t, s, true);
    const Vec mode = heat_exact_solution(g, 0.0);
    const double tf = heat_time_factor(t);
    for (int i = 0; i < g.size(); ++i) {
        CHECK(fc[i] == doctest::Approx((td + std::pow(mu_cont, s) * tf) * mode[i])
                           .epsilon(1e-7));
        CHECK(fd[i] == doctest::Approx((td + std::pow(mu_disc, s) * tf) * mode[i])
                           .epsilon(1e-7));
    }
}

TEST_CASE("euler step on a scaled identity matches the scalar formula") {
    const int n = 4;
    const double lambda = 3e5, s = 0.5, tau = 1e-4;
    const SparseOperator a = scaled_identity(n, lambda);
    SpectralBounds b;
    b.lambda_min_lb = lambda;
    b.lambda_max_ub = 1e6;
    Vec u_prev(n), f(n);
    for (int i = 0; i < n; ++i) {
        u_prev[i] = 0.2 * (i + 1);
        f[i] = 1.0 - 0.1 * i;
    }
    const Vec u = euler_step(a, b, s, u_prev, f, tau, shifted_model());
    for (int i = 0; i < n; ++i) {
        const double exact = (u_prev[i] / tau + f[i]) / (1.0 / tau + std::pow(lambda, s));
        CHECK(u[i] == doctest::Approx(exact).epsilon(1e-3));
    }
}

TEST_CASE("euler step maps zero data to zero") {
    const HeatGrid g = HeatGrid::from_interior(4);
    const SparseOperator a = assemble_laplacian_heat(g);
    const SpectralBounds b = heat_spectral_bounds(g);
    const Vec u = euler_step(a, b, 0.5, Vec(g.size(), 0.0), Vec(g.size(), 0.0), 1e-3,
                             shifted_model());
    for (double v : u) CHECK(v == 0.0);
}

TEST_CASE("euler step against the dense oracle") {
    const HeatGrid g = HeatGrid::from_interior(5);
    const SparseOperator a = assemble_laplacian_heat(g);
    const SpectralBounds b = heat_spectral_bounds(g);
    const double s = 0.5, tau = 1e-4;
    const Vec u_prev = heat_exact_solution(g, 0.0);
    const Vec f = heat_forcing(g, tau, s, false);

    const Vec u = euler_step(a, b, s, u_prev, f, tau, shifted_model());

    // oracle: (A^s + I/tau)^{-1} (u_prev/tau + f) in the eigenbasis
    const EigenDecomposition eig = dense_sym_eigen(to_dense(a));
    const int n = g.size();
    Vec rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = u_prev[i] / tau + f[i];
    Vec y(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += eig.eigenvectors.at(i, k) * rhs[i];
        const double factor = 1.0 / (std::pow(eig.eigenvalues[k], s) + 1.0 / tau);
        for (int i = 0; i < n; ++i) y[i] += factor * dot * eig.eigenvectors.at(i, k);
    }

    const double d = 1.0 / (tau * std::pow(b.lambda_max_ub, s));
    const TargetFunction target = TargetFunction::shifted_recip(s, d);
    const double sup = sup_error(interpolate(shifted_model(), target), target,
                                 reim::testing::dense_grid());
    Vec diff(n);
    for (int i = 0; i < n; ++i) diff[i] = u[i] - y[i];
    CHECK(l2_norm(diff) <=
          sup * l2_norm(rhs) / std::pow(b.lambda_max_ub, s) + 1e-9 * l2_norm(rhs));
}

TEST_CASE("bdf2 step on a scaled identity matches the scalar formula") {
    const int n = 3;
    const double lambda = 2e5, s = 0.5;
    const SparseOperator a = scaled_identity(n, lambda);
    SpectralBounds b;
    b.lambda_min_lb = lambda;
    b.lambda_max_ub = 1e6;
    const Bdf2Coeffs c = bdf2_coeffs(1e-4, 2e-4);
    Vec u_m(n), u_m_1(n), f(n);
    for (int i = 0; i < n; ++i) {
        u_m[i] = 1.0 + 0.3 * i;
        u_m_1[i] = 0.9 + 0.3 * i;
        f[i] = 0.5 * (i + 1);
    }
    const Vec u = bdf2_step(a, b, s, u_m, u_m_1, f, c, shifted_model());
    for (int i = 0; i < n; ++i) {
        const double exact =
            (f[i] - c.k0 * u_m[i] - c.km1 * u_m_1[i]) / (c.k1 + std::pow(lambda, s));
        CHECK(u[i] == doctest::Approx(exact).epsilon(1e-3));
    }
}

TEST_CASE("interpolated shift targets keep the model poles") {
    const double s = 0.5;
    const PartialFraction p1 = interpolate(shifted_model(), TargetFunction::shifted_recip(s, 3.0));
    const PartialFraction p2 = interpolate(shifted_model(), TargetFunction::shifted_recip(s, 70.0));
    CHECK(p1.poles_b == shifted_model().poles_b);
    CHECK(p1.poles_b == p2.poles_b);
}

TEST_CASE("closed-form bdf2 recurrence converges at second order") {
    // u' = -u integrated by the pure recurrence (exact first level) so the
    // time error is isolated from the rational approximation
    auto run = [](int steps) {
        const double tau = 1.0 / steps;
        const Bdf2Coeffs c = bdf2_coeffs(tau, tau);
        double um1 = 1.0, um = std::exp(-tau);
        for (int m = 1; m < steps; ++m) {
            const double next = (-c.k0 * um - c.km1 * um1) / (c.k1 + 1.0);
            um1 = um;
            um = next;
        }
        return std::abs(um - std::exp(-1.0));
    };
    const double ratio = run(64) / run(128);
    CHECK(ratio >= 3.4);
    CHECK(ratio <= 4.6);
}

TEST_CASE("adaptive run completes and the controller replays from the trace") {
    const HeatGrid g = HeatGrid::from_spacing_log2(3);
    HeatRunConfig cfg;
    cfg.s = 0.5;
    cfg.tol = 1e-4;
    cfg.tau0 = 1e-3;
    cfg.t_final = 0.05;
    const AdaptiveResult res = adaptive_run(g, cfg, shifted_model());
    const std::vector<StepRecord>& steps = res.trace.steps;

    REQUIRE(steps.size() >= 3);
    CHECK(steps[0].accepted);
    CHECK(steps[0].tau == cfg.tau0);
    CHECK(steps[0].err == 0.0);
    CHECK(steps[1].tau == cfg.tau0);  // bootstrap leaves the step unchanged

    int accepted = 0, rejected = 0;
    double t = 0.0, sum_tau = 0.0;
    for (const StepRecord& r : steps) {
        if (r.accepted) {
            ++accepted;
            sum_tau += r.tau;
            t += r.tau;
            if (&r != &steps.front()) CHECK(r.err <= cfg.tol);
        } else {
            ++rejected;
            CHECK(r.err > cfg.tol);
        }
    }
    CHECK(accepted == res.trace.accepted);
    CHECK(rejected == res.trace.rejected);
    CHECK(rejected <= 50);
    CHECK(sum_tau == doctest::Approx(cfg.t_final).epsilon(1e-12));
    CHECK(res.final_l2_error <= 5e-2);

    // replay: every step after the bootstrap follows the published formula,
    // truncated so the run lands exactly on t_final
    double reached = steps[0].tau;
    for (std::size_t i = 1; i + 1 < steps.size(); ++i) {
        const StepRecord& r = steps[i];
        double expect = 0.8 * r.tau * std::sqrt(cfg.tol / r.err);
        expect = std::clamp(expect, 1e-8, cfg.t_final / 10.0);
        if (r.accepted) reached += r.tau;
        expect = std::min(expect, cfg.t_final - reached);
        CHECK(steps[i + 1].tau == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("hopeless tolerance trips the rejection guard") {
    const HeatGrid g = HeatGrid::from_interior(3);
    HeatRunConfig cfg;
    cfg.tol = 1e-300;
    cfg.tau0 = 1e-3;
    cfg.t_final = 0.05;
    CHECK_THROWS_AS(adaptive_run(g, cfg, shifted_model()), std::runtime_error);
}

TEST_CASE("shifted targets across the step-size sweep stay within tolerance") {
    const SampleGrid grid = geometric_grid(Interval(1e-6, 1.0), 2000);
    SplitMix64 rng(5150);
    for (int i = 0; i < 10; ++i) {
        const double d = rng.log_uniform(1.0, 1e3);
        const TargetFunction f = TargetFunction::shifted_recip(0.5, d);
        CHECK(sup_error(interpolate(shifted_model(), f), f, grid) <= 1e-3);
    }
}
