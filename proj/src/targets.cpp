#include "reim/targets.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "reim/numerics.hpp"

namespace reim {

namespace {

std::string fmt_param(const char* name, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.6g", name, v);
    return buf;
}

}  // namespace

TargetFunction TargetFunction::power_neg(double s) {
    if (!(s > 0.0) || !(s < 1.0))
        throw std::invalid_argument("power_neg: s must lie in (0,1)");
    TargetFunction t;
    t.kind = TargetKind::PowerNeg;
    t.s = s;
    return t;
}

TargetFunction TargetFunction::shifted_recip(double s, double d) {
    if (!(s > 0.0) || !(s <= 1.0))
        throw std::invalid_argument("shifted_recip: s must lie in (0,1]");
    if (!(d >= 0.0))
        throw std::invalid_argument("shifted_recip: d must be nonnegative");
    TargetFunction t;
    t.kind = TargetKind::ShiftedRecip;
    t.s = s;
    t.d = d;
    return t;
}

TargetFunction TargetFunction::precond(double K) {
    if (!(K > 0.0))
        throw std::invalid_argument("precond: K must be positive");
    TargetFunction t;
    t.kind = TargetKind::Precond;
    t.K = K;
    return t;
}

TargetFunction TargetFunction::exp_neg(double tau) {
    if (!(tau > 0.0))
        throw std::invalid_argument("exp_neg: tau must be positive");
    TargetFunction t;
    t.kind = TargetKind::ExpNeg;
    t.tau = tau;
    return t;
}

TargetFunction TargetFunction::phi_neg(double tau) {
    if (!(tau > 0.0))
        throw std::invalid_argument("phi_neg: tau must be positive");
    TargetFunction t;
    t.kind = TargetKind::PhiNeg;
    t.tau = tau;
    return t;
}

double phi(double z) {
    if (std::abs(z) < 1e-4)
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    return std::expm1(z) / z;
}

double eval_target(const TargetFunction& t, double x) {
    switch (t.kind) {
        case TargetKind::PowerNeg:
            if (!(x > 0.0))
                throw std::invalid_argument("eval_target: x must be positive");
            return std::pow(x, -t.s);
        case TargetKind::ShiftedRecip:
            if (!(x > 0.0))
                throw std::invalid_argument("eval_target: x must be positive");
            return 1.0 / (std::pow(x, t.s) + t.d);
        case TargetKind::Precond:
            if (!(x > 0.0))
                throw std::invalid_argument("eval_target: x must be positive");
            return 1.0 / (1.0 / std::sqrt(x) + t.K * std::sqrt(x));
        case TargetKind::ExpNeg:
            return std::exp(-t.tau * x);
        case TargetKind::PhiNeg:
            return phi(-t.tau * x);
    }
    throw std::logic_error("eval_target: unknown kind");
}

double TargetFunction::operator()(double x) const { return eval_target(*this, x); }

std::string TargetFunction::label() const {
    switch (kind) {
        case TargetKind::PowerNeg:
            return "power(" + fmt_param("s", s) + ")";
        case TargetKind::ShiftedRecip:
            return "shifted_recip(" + fmt_param("s", s) + "," + fmt_param("d", d) + ")";
        case TargetKind::Precond:
            return "precond(" + fmt_param("K", K) + ")";
        case TargetKind::ExpNeg:
            return "exp(" + fmt_param("tau", tau) + ")";
        case TargetKind::PhiNeg:
            return "phi(" + fmt_param("tau", tau) + ")";
    }
    return "unknown";
}

double stieltjes_oracle(double s, double k, double x, int quad_points) {
    if (!(s > 0.0) || !(s < 1.0))
        throw std::invalid_argument("stieltjes_oracle: s must lie in (0,1)");
    if (!(k >= 0.0))
        throw std::invalid_argument("stieltjes_oracle: k must be nonnegative");
    if (!(x > 0.0))
        throw std::invalid_argument("stieltjes_oracle: x must be positive");
    if (quad_points < 1)
        throw std::invalid_argument("stieltjes_oracle: quad_points must be >= 1");

    const double pi = std::numbers::pi;
    const double cs = std::cos(pi * s);
    const double sn = std::sin(pi * s);

    // left decay is (1+s) when the k-term dominates, (1-s) when k = 0
    const double alpha_minus = (k > 0.0) ? (1.0 + s) : (1.0 - s);
    const double alpha_plus = s;
    const double u_lo = std::log(std::min(x, 1.0)) - 32.0 / alpha_minus;
    const double u_hi = std::log(std::max(x, 1.0)) + 32.0 / alpha_plus;
    const double range = u_hi - u_lo;

    const int order = 12;
    const int npan = std::max(static_cast<int>(std::ceil(range / 0.25)),
                              (quad_points + order - 1) / order);

    // uniform panels in u; GL nodes on [-1,1] mapped per panel
    static thread_local Quadrature base = gauss_legendre_rule(order);
    const Vec& base_x = base.nodes;
    const Vec& base_w = base.weights;

    double acc = 0.0;
    const double hpan = range / npan;
    for (int p = 0; p < npan; ++p) {
        const double a = u_lo + p * hpan;
        const double mid = a + 0.5 * hpan;
        const double half = 0.5 * hpan;
        double panel = 0.0;
        for (int i = 0; i < order; ++i) {
            const double u = mid + half * base_x[i];
            const double eu = std::exp(u);
            const double shifted = cs + k * std::exp(-s * u);
            const double den = (shifted * shifted + sn * sn) * (x + eu);
            panel += base_w[i] * std::exp((1.0 - s) * u) / den;
        }
        acc += half * panel;
    }
    return acc * sn / pi;
}

}  // namespace reim
