#pragma once

#include <vector>

#include "krl/types.hpp"

namespace krl {

/// One converged level of the regularized branch: x = lambda * T(x + eps*u), |x|_inf = 1.
struct TraceRecord {
    double eps = 0.0;
    double lambda = 0.0;
    int iterations = 0;
    /// Last fixed-point increment |x_{k+1} - x_k|_inf.
    double residual = 0.0;
    /// |x_eps - x_{eps_prev}|_inf; zero on the first level.
    double step_delta = 0.0;
    Vector x;
};

/// Levels in order of strictly decreasing eps.
struct ContinuationTrace {
    std::vector<TraceRecord> records;

    [[nodiscard]] bool empty() const { return records.empty(); }
    [[nodiscard]] std::size_t size() const { return records.size(); }
};

}  // namespace krl
