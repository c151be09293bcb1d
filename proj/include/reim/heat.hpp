// Implicit Euler and variable-step BDF2 for the fractional heat equation on
// (0,1)^2, with the adaptive step controller driven by their disagreement.
#pragma once

#include <optional>

#include "reim/core.hpp"
#include "reim/fracpde.hpp"

namespace reim {

// Interior grid on (0,1)^2 with spacing h = 1/(M+1), lexicographic index.
struct HeatGrid {
    int M = 1;
    double h = 0.5;

    static HeatGrid from_interior(int m);
    static HeatGrid from_spacing_log2(int p);  // h = 2^{-p}

    int size() const { return M * M; }
};

SparseOperator assemble_laplacian_heat(const HeatGrid& grid);

// Exact smallest discrete eigenvalue 8 sin^2(pi h/2)/h^2 on (0,1)^2.
SpectralBounds heat_spectral_bounds(const HeatGrid& grid,
                                    std::optional<double> override_lambda = std::nullopt);

struct Bdf2Coeffs {
    double k1 = 0.0;
    double k0 = 0.0;
    double km1 = 0.0;
};

// Variable-step second-order backward differentiation weights for current
// step tau_m and previous step tau_m1; they annihilate constants exactly.
Bdf2Coeffs bdf2_coeffs(double tau_m, double tau_m1);

// One backward Euler step: u = sum c_i (A/Lambda + b_i)^{-1} (u_prev/tau + f_m)
// / Lambda^s, residues from the shifted-reciprocal interpolant with shift
// 1/(tau Lambda^s).
Vec euler_step(const SparseOperator& a, const SpectralBounds& bounds, double s,
               const Vec& u_prev, const Vec& f_m, double tau, const ReimModel& model,
               int threads = 1);

// One BDF2 step toward the next level, shift k1/Lambda^s, right-hand side
// f_next - k0 u_m - km1 u_m_1.
Vec bdf2_step(const SparseOperator& a, const SpectralBounds& bounds, double s, const Vec& u_m,
              const Vec& u_m_1, const Vec& f_next, const Bdf2Coeffs& coeffs,
              const ReimModel& model, int threads = 1);

struct StepRecord {
    double t = 0.0;    // attempted end time of the step
    double tau = 0.0;
    double err = 0.0;  // h * l2 distance between the Euler and BDF2 states
    bool accepted = false;
};

struct AdaptiveTrace {
    std::vector<StepRecord> steps;
    int accepted = 0;
    int rejected = 0;
};

struct HeatRunConfig {
    double s = 0.5;
    double tol = 1e-4;
    double tau0 = 1e-3;
    double t_final = 1.0;
    bool discrete_symbol = false;  // use the discrete eigenvalue in the forcing
    int threads = 1;
};

struct AdaptiveResult {
    AdaptiveTrace trace;
    Vec u_final;
    double final_l2_error = 0.0;  // against the manufactured solution at T
};

// Manufactured solution u = T(t) sin(pi x) sin(pi y), T(t) = e^{-t/20} cos(2 pi t).
double heat_time_factor(double t);
Vec heat_exact_solution(const HeatGrid& grid, double t);
Vec heat_forcing(const HeatGrid& grid, double t, double s, bool discrete_symbol);

// Adaptive integration on [0, t_final]: the first step is accepted
// unconditionally at tau0 (BDF2 needs two back levels); afterwards each step
// is accepted when the Euler/BDF2 disagreement stays within tol, the state
// advances with the Euler solution, and the next step follows
// tau_new = 0.8 tau sqrt(tol/err) clamped to [1e-8, t_final/10]. The last
// step is truncated to land on t_final exactly. More than 100 consecutive
// rejections raises a controller failure.
AdaptiveResult adaptive_run(const HeatGrid& grid, const HeatRunConfig& cfg,
                            const ReimModel& model);

}  // namespace reim
