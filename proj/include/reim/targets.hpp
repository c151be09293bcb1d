// Scalar target functions approximated by the greedy models, plus an
// independent quadrature oracle for the negative-power family.
#pragma once

#include <string>

#include "reim/core.hpp"

namespace reim {

enum class TargetKind { PowerNeg, ShiftedRecip, Precond, ExpNeg, PhiNeg };

// One scalar function x -> f(x):
//   PowerNeg(s)        x^{-s}
//   ShiftedRecip(s,d)  1/(x^s + d)
//   Precond(K)         (x^{-1/2} + K x^{1/2})^{-1}
//   ExpNeg(tau)        exp(-tau x)
//   PhiNeg(tau)        phi(-tau x) with phi(z) = (e^z - 1)/z
// ShiftedRecip admits s = 1 so the backward-Euler target with integer order
// stays expressible; all other exponents require s in (0,1).
struct TargetFunction {
    TargetKind kind = TargetKind::PowerNeg;
    double s = 0.5;
    double d = 0.0;
    double K = 1.0;
    double tau = 1.0;

    static TargetFunction power_neg(double s);
    static TargetFunction shifted_recip(double s, double d);
    static TargetFunction precond(double K);
    static TargetFunction exp_neg(double tau);
    static TargetFunction phi_neg(double tau);

    double operator()(double x) const;
    std::string label() const;
};

double eval_target(const TargetFunction& t, double x);

// phi(z) = (e^z - 1)/z extended by phi(0) = 1; series branch below |z| = 1e-4
// keeps relative accuracy near cancellation.
double phi(double z);

// Quadrature evaluation of the integral representation of 1/(x^s + k):
//   (sin(pi s)/pi) * Int_0^inf t^s / ((t^s cos(pi s) + k)^2 + (t^s sin(pi s))^2)
//                    * 1/(x + t) dt.
// Substituting t = e^u and factoring out the growing exponential gives an
// integrand that decays at rate s to the right and (k > 0 ? 1+s : 1-s) to the
// left; the truncation window is sized so both tails fall below e^{-32}.
// quad_points is a floor on the total node count.
double stieltjes_oracle(double s, double k, double x, int quad_points = 2000);

}  // namespace reim
