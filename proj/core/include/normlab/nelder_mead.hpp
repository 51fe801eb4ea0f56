#pragma once

#include <functional>
#include <span>
#include <vector>

namespace normlab {

struct SimplexOptions {
    int max_iters = 2000;
    double ftol = 1e-12;   // spread of simplex values
    double xtol = 1e-10;   // spread of simplex vertices
    double init_step = 0.25;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Downhill simplex with dimension-adaptive coefficients. Deterministic for a
/// fixed starting point; derivative-free by construction.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, const SimplexOptions& opts = {});

}  // namespace normlab
