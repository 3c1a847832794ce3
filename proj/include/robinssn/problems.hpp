#ifndef ROBINSSN_PROBLEMS_HPP
#define ROBINSSN_PROBLEMS_HPP

#include "robinssn/problem.hpp"

namespace robinssn {

/// The built-in benchmark: A = -Laplace + 1,
/// a(x,y) = y^3 - sin(2 pi x1) sin(pi x2) cos(3 pi x3), g = 0,
/// L = (y - y_d)^2 / 2 with y_d = -512 prod x_i (1 - x_i),
/// nu = 0.01, alpha = 0, beta = 1.
ProblemSpec paper_example();

/// Closed-form data for a manufactured state: y_star solves the state
/// equation exactly for the constant control u_star once the problem is
/// built with a(x,y) = y^3 - c(x), c = -Lap(y_star) + y_star + y_star^3 and
/// g = dn(y_star) + u_star y_star.
struct ManufacturedData {
    VolumeFn y_star;
    VolumeFn laplacian_y_star;
    std::function<Vector3(const Vector3&)> grad_y_star;
    double u_star = 1.0;
};

struct ManufacturedProblem {
    ProblemSpec spec;
    VolumeFn exact_state;
    double control_value = 1.0;
};

/// Build the manufactured problem from closed-form data. The objective is
/// L = (y - y_star)^2 / 2 so optimizer runs stay meaningful, but the intended
/// use is validating the PDE stack at the fixed control u_star.
ManufacturedProblem manufactured(const ManufacturedData& data);

/// y_star = x1 (harmonic), u_star = 1.
ManufacturedProblem manufactured_linear_profile();

/// y_star = x1 + x2^2, u_star = 1; the convergence-order workhorse.
ManufacturedProblem manufactured_quadratic_profile();

} // namespace robinssn

#endif
