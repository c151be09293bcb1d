#include "reim/core.hpp"

#include <cmath>

namespace reim {

double pf_eval(const PartialFraction& pf, double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pf.poles_b.size(); ++i) {
        const double den = x + pf.poles_b[i];
        if (den == 0.0)
            throw std::domain_error("pf_eval: evaluation at a pole");
        acc += pf.residues_c[i] / den;
    }
    return acc;
}

SampleGrid geometric_grid(const Interval& iv, int count) {
    if (count < 2)
        throw std::invalid_argument("geometric_grid: count must be >= 2");
    SampleGrid g;
    g.points.resize(count);
    const double llo = std::log(iv.lo);
    const double lhi = std::log(iv.hi);
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        g.points[i] = std::exp(llo + t * (lhi - llo));
    }
    // endpoints exactly, so grids stay inside the interval
    g.points.front() = iv.lo;
    g.points.back() = iv.hi;
    return g;
}

}  // namespace reim
