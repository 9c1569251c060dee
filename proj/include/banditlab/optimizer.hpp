#pragma once

#include <functional>
#include <vector>

#include "banditlab/objectives.hpp"
#include "banditlab/types.hpp"

// Full-batch deterministic maximizer for the concave training objectives:
// L-BFGS directions with Armijo backtracking. The objective never decreases
// across accepted steps; convergence means the gradient infinity norm
// dropped to grad_tol or below.

namespace banditlab {

struct FitResult {
    ParamVector beta;
    double final_objective = 0.0;
    double final_grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Evaluates the objective at x and fills grad (same length as x).
using ObjectiveFn =
    std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

// Maximizes `objective` from beta0. Throws std::runtime_error naming the
// iteration if a non-finite objective or gradient shows up.
FitResult optimize(const ObjectiveFn& objective, ParamVector beta0,
                   const FitOptions& opts);

}  // namespace banditlab
