// Thread helpers for the independent shifted solves behind every
// partial-fraction operator application.
#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "reim/core.hpp"
#include "reim/numerics.hpp"

namespace reim {

// Runs work(i) for 0 <= i < count, block-partitioned over at most `threads`
// workers. The first exception (lowest worker index) is rethrown.
inline void parallel_apply(int count, int threads, const std::function<void(int)>& work) {
    if (count <= 0) return;
    const int workers = std::max(1, std::min(threads, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) work(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(count, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                for (int i = begin; i < end; ++i) work(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// sum_i c_i (a + b_i I)^{-1} rhs. Solves are independent; the final summation
// runs in pole-index order so the result does not depend on scheduling. A
// failed solve reports which shift diverged.
inline Vec pf_apply_shifted(const SparseOperator& a, const PartialFraction& pf, const Vec& rhs,
                            double rel_tol, int threads) {
    const int n = static_cast<int>(pf.size());
    std::vector<Vec> parts(n);
    parallel_apply(n, threads, [&](int i) {
        try {
            parts[i] = cg_solve(a, pf.poles_b[i], rhs, rel_tol).x;
        } catch (cg_failure& e) {
            e.shift_index = i;
            throw;
        }
    });
    Vec out(rhs.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] += pf.residues_c[i] * parts[i][k];
    return out;
}

}  // namespace reim
