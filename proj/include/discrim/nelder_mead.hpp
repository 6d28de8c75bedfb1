#pragma once

#include <functional>
#include <vector>

namespace discrim {

struct NelderMeadOptions {
    double f_tol = 1e-10;       // stop when worst-best objective spread falls below this
    double x_tol = 1e-9;        // ... and the simplex diameter below this
    int max_iterations = 0;     // 0 selects 400 * dimension
    double initial_step = 0.25; // edge length of the initial simplex
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Downhill simplex minimization of f starting at x0.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace discrim
