// support_fit.hpp
//
// Estimate the support [a, b] of the angular measure by minimizing
//
//     g(a, b) = (b - a) + lambda sqrt(k) |D*(a, b) - H|
//
// over the triangle 0 <= a <= b <= 1. The width term favours narrow
// intervals; the penalty grows as top-k points fall outside the cone.

#ifndef TAILDEP_SUPPORT_FIT_HPP
#define TAILDEP_SUPPORT_FIT_HPP

#include <cstddef>
#include <vector>

#include "taildep/geometry.hpp"

namespace taildep {

struct SupportFitOptions {
    double lambda{1.0};
    std::size_t grid_size{101};  ///< points per axis of the coarse grid on [0, 1]
    std::size_t refine_iters{400};
    double tol{1e-7};  ///< simplex diameter at which refinement stops

    void validate() const;
};

struct ObjectiveEval {
    double a{};
    double b{};
    double value{};
};

struct SupportEstimate {
    double a_hat{};
    double b_hat{};
    double objective_value{};
    std::vector<ObjectiveEval> trace;  ///< every evaluation, grid first, in order
};

/// g(a, b); needs 0 <= a <= b <= 1 and the Hill preconditions for k.
double support_objective(const RadialOrder& ord, std::size_t k, double a, double b, double lambda);

/// Exhaustive grid over the triangle, then Nelder-Mead from the best grid
/// point with infeasible vertices projected back. Grid ties go to the
/// narrower interval, then the smaller a.
SupportEstimate estimate_support(const RadialOrder& ord, std::size_t k, const SupportFitOptions& opts = {});

}  // namespace taildep

#endif  // TAILDEP_SUPPORT_FIT_HPP
