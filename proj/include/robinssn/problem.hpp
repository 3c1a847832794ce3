#ifndef ROBINSSN_PROBLEM_HPP
#define ROBINSSN_PROBLEM_HPP

#include <optional>

#include "robinssn/fem.hpp"

namespace robinssn {

/// Data of the control problem: the semilinear term a(x,y) with its
/// y-derivatives, the objective integrand L(x,y) with its y-derivatives, the
/// boundary datum g, the operator's zeroth-order coefficient a0, the Tichonov
/// weight nu and the control bounds [alpha, beta].
///
/// When the objective has the tracking structure L = (y - y_d)^2 / 2, set
/// tracking_target to y_d: the discrete objective then integrates the square
/// of the interpolated difference with the consistent mass (the form whose
/// table values the benchmark reproduces) instead of the vertex rule used
/// for general integrands. The L evaluators must agree with the target.
struct ProblemSpec {
    StateFn a_eval;
    StateFn da_eval;
    StateFn d2a_eval;
    StateFn L_eval;
    StateFn dL_eval;
    StateFn d2L_eval;
    BoundaryFn g;  // empty means g == 0
    VolumeFn a0;
    std::optional<VolumeFn> tracking_target;
    double nu = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    /// Throws std::invalid_argument when the evaluators are missing, the
    /// parameters violate nu > 0, 0 <= alpha < beta, or a declared tracking
    /// target disagrees with the L evaluators at probe points.
    void validate() const;
};

} // namespace robinssn

#endif
