#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "reim/numerics.hpp"
#include "reim/oga.hpp"

using namespace reim;

namespace {

const Interval kIv(1e-6, 1.0);

const Quadrature& quad() {
    static const Quadrature q = roga_default_quadrature(kIv);
    return q;
}

double quad_moment(const TargetFunction& f, double b, const Quadrature& q) {
    double acc = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k)
        acc += q.weights[k] * f(q.nodes[k]) / (q.nodes[k] + b);
    return acc;
}

SampleGrid power_dict() { return geometric_grid(Interval(1e-8, 1e3), 36); }

}  // namespace

TEST_CASE("projection onto a containing basis recovers the residue") {
    const double b = 0.37;
    const TargetFunction f = TargetFunction::shifted_recip(1.0, b);
    const PartialFraction one = project_l2(f, Vec{b}, kIv, quad());
    REQUIRE(one.size() == 1);
    CHECK(one.residues_c[0] == doctest::Approx(1.0).epsilon(1e-12));

    const PartialFraction two = project_l2(f, Vec{b, 5.0}, kIv, quad());
    CHECK(two.residues_c[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(two.residues_c[1]) <= 1e-9);
}

TEST_CASE("smallest dictionary element is recovered in one step") {
    // the raw correlation <g_b, g_b*> grows as b decreases, so when the
    // target is the smallest element the first selection must hit it
    const SampleGrid dict = geometric_grid(Interval(0.1, 1e3), 36);
    const double bstar = dict.points.front();
    const TargetFunction f = TargetFunction::shifted_recip(1.0, bstar);
    const RogaResult res = roga_run(f, dict, 1, kIv, quad());
    REQUIRE(res.selected_b.size() == 1);
    CHECK(res.selected_b[0] == bstar);
    CHECK(res.l2_errors[0] <= 1e-6);
}

TEST_CASE("an identically zero target yields a zero expansion") {
    // exp(-1e12 x) underflows to exact zero on the whole interval
    const TargetFunction f = TargetFunction::exp_neg(1e12);
    for (double x : quad().nodes) REQUIRE(f(x) == 0.0);
    const RogaResult res = roga_run(f, power_dict(), 5, kIv, quad());
    for (double e : res.l2_errors) CHECK(e == 0.0);
    for (double c : res.expansion.residues_c) CHECK(c == 0.0);
    // every correlation ties at zero, so selection walks the smallest
    // remaining candidates in order
    const SampleGrid dict = power_dict();
    for (int i = 0; i < 5; ++i) CHECK(res.selected_b[i] == dict.points[i]);
}

TEST_CASE("expansion error for the square root power collapses") {
    const TargetFunction f = TargetFunction::power_neg(0.5);
    const RogaResult res = roga_run(f, power_dict(), 30, kIv, quad());
    REQUIRE(res.l2_errors.size() == 30);
    CHECK(res.l2_errors[29] <= 1e-4 * res.l2_errors[0]);
    CHECK(res.l2_errors[29] <= 1e-3 * res.l2_errors[4]);
}

TEST_CASE("errors decrease monotonically above the round-off floor") {
    const TargetFunction f = TargetFunction::power_neg(0.75);
    const RogaResult res = roga_run(f, power_dict(), 30, kIv, quad());
    // the cancellation in ||f||^2 - <f, f_m> leaves a floor of about
    // sqrt(eps) * ||f||, below which the estimates wobble
    const double floor = 1e-7 * std::sqrt((std::pow(1e-6, -0.5) - 1.0) / 0.5);
    for (std::size_t m = 1; m < res.l2_errors.size(); ++m)
        CHECK(res.l2_errors[m] <= std::max(res.l2_errors[m - 1] * (1.0 + 1e-12), floor));
}

TEST_CASE("residual is orthogonal to the selected span") {
    const TargetFunction f = TargetFunction::power_neg(0.5);
    const RogaResult res = roga_run(f, power_dict(), 10, kIv, quad());
    const Vec& c = res.expansion.residues_c;
    const Vec& b = res.selected_b;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double moment = quad_moment(f, b[i], quad());
        double proj = 0.0, scale = std::abs(moment);
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double term = c[j] * gram_entry(b[j], b[i], kIv);
            proj += term;
            scale += std::abs(term);
        }
        CHECK(std::abs(moment - proj) <= 1e-8 * scale);
    }
}

TEST_CASE("projection coefficients are quadrature-converged") {
    const TargetFunction f = TargetFunction::power_neg(0.25);
    const Vec basis = {1e-5, 1e-3, 0.05, 0.9, 20.0};
    const PartialFraction coarse = project_l2(f, basis, kIv, quad());
    const Quadrature fine = gauss_legendre_panels(kIv, 800, 16);
    const PartialFraction ref = project_l2(f, basis, kIv, fine);
    for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(coarse.residues_c[i] ==
              doctest::Approx(ref.residues_c[i]).epsilon(1e-8));
}

TEST_CASE("selection maximizes the correlation in the first two steps") {
    const TargetFunction f = TargetFunction::power_neg(0.5);
    const SampleGrid dict = power_dict();
    const RogaResult res = roga_run(f, dict, 2, kIv, quad());

    Vec corr1(dict.points.size());
    for (std::size_t j = 0; j < dict.points.size(); ++j)
        corr1[j] = std::abs(quad_moment(f, dict.points[j], quad()));
    const double best1 = *std::max_element(corr1.begin(), corr1.end());
    const std::size_t i1 = std::find(dict.points.begin(), dict.points.end(), res.selected_b[0]) -
                           dict.points.begin();
    REQUIRE(i1 < dict.points.size());
    CHECK(corr1[i1] >= best1 * (1.0 - 1e-12));

    const PartialFraction f1 = project_l2(f, {res.selected_b[0]}, kIv, quad());
    Vec corr2(dict.points.size(), 0.0);
    for (std::size_t j = 0; j < dict.points.size(); ++j) {
        if (j == i1) continue;
        corr2[j] = std::abs(quad_moment(f, dict.points[j], quad()) -
                            f1.residues_c[0] *
                                gram_entry(res.selected_b[0], dict.points[j], kIv));
    }
    const double best2 = *std::max_element(corr2.begin(), corr2.end());
    const std::size_t i2 = std::find(dict.points.begin(), dict.points.end(), res.selected_b[1]) -
                           dict.points.begin();
    REQUIRE(i2 < dict.points.size());
    CHECK(corr2[i2] >= best2 * (1.0 - 1e-12));
}

TEST_CASE("reconstructed target norm matches the closed form") {
    // ||x^{-s}||^2 over [eta, 1] is (1 - eta^{1-2s})/(1-2s), or -ln(eta) at
    // s = 1/2; recover ||f||^2 from the one-term run via
    // l2^2 = ||f||^2 - c * moment
    struct Case {
        double s, norm2;
    };
    const double eta = 1e-6;
    const Case cases[] = {
        {0.25, (1.0 - std::pow(eta, 0.5)) / 0.5},
        {0.5, -std::log(eta)},
        {0.75, (std::pow(eta, -0.5) - 1.0) / 0.5},
    };
    for (const Case& kase : cases) {
        const TargetFunction f = TargetFunction::power_neg(kase.s);
        const RogaResult res = roga_run(f, power_dict(), 1, kIv, quad());
        const double moment = quad_moment(f, res.selected_b[0], quad());
        const double norm2 =
            res.l2_errors[0] * res.l2_errors[0] + res.expansion.residues_c[0] * moment;
        CHECK(norm2 == doctest::Approx(kase.norm2).epsilon(1e-9));
    }
}

TEST_CASE("pythagoras holds for the eight-term expansion") {
    const TargetFunction f = TargetFunction::power_neg(0.5);
    const RogaResult res = roga_run(f, power_dict(), 8, kIv, quad());
    const Vec& c = res.expansion.residues_c;
    const Vec& b = res.selected_b;
    double fm2 = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            fm2 += c[i] * c[j] * gram_entry(b[i], b[j], kIv);
    const double norm2 = -std::log(1e-6);
    const double resid2 = res.l2_errors.back() * res.l2_errors.back();
    CHECK(fm2 + resid2 == doctest::Approx(norm2).epsilon(1e-8));
}
