#include "reim/matfun.hpp"

#include <cmath>

#include "reim/greedy.hpp"
#include "reim/parallel.hpp"
#include "reim/targets.hpp"

namespace reim {

namespace {

TargetFunction target_for(MatFunKind kind, double tau) {
    return kind == MatFunKind::Exp ? TargetFunction::exp_neg(tau)
                                   : TargetFunction::phi_neg(tau);
}

}  // namespace

Vec apply_matrix_function(const SparseOperator& l, MatFunKind kind, double tau, const Vec& v,
                          const ReimModel& model, const SpectralBounds& bounds, int threads) {
    if (model.interval.lo > bounds.lambda_min_lb * (1.0 + 1e-12) ||
        model.interval.hi < bounds.lambda_max_ub * (1.0 - 1e-12))
        throw std::invalid_argument("apply_matrix_function: model interval misses the spectrum");
    const PartialFraction pf = interpolate(model, target_for(kind, tau));
    return pf_apply_shifted(l, pf, v, 1e-12, threads);
}

std::map<double, std::map<MatFunKind, PartialFraction>> shared_pole_family(
    const ReimModel& model, const Vec& tau_list, const std::vector<MatFunKind>& kinds) {
    std::map<double, std::map<MatFunKind, PartialFraction>> family;
    for (double tau : tau_list)
        for (MatFunKind kind : kinds)
            family[tau][kind] = interpolate(model, target_for(kind, tau));
    return family;
}

Vec dense_matrix_function(const DenseMatrix& l, MatFunKind kind, double tau, const Vec& v) {
    const EigenDecomposition eig = dense_sym_eigen(l);
    const int n = l.rows;
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("dense_matrix_function: size mismatch");
    Vec coef(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += eig.eigenvectors.at(i, k) * v[i];
        const double z = -tau * eig.eigenvalues[k];
        coef[k] = dot * (kind == MatFunKind::Exp ? std::exp(z) : phi(z));
    }
    Vec out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += eig.eigenvectors.at(i, k) * coef[k];
        out[i] = acc;
    }
    return out;
}

}  // namespace reim
