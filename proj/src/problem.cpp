#include "robinssn/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace robinssn {

void ProblemSpec::validate() const {
    if (!a_eval || !da_eval || !d2a_eval)
        throw std::invalid_argument("ProblemSpec: nonlinearity evaluators must all be set");
    if (!L_eval || !dL_eval || !d2L_eval)
        throw std::invalid_argument("ProblemSpec: objective evaluators must all be set");
    if (!a0)
        throw std::invalid_argument("ProblemSpec: a0 must be set");
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw std::invalid_argument("ProblemSpec: nu must be positive and finite");
    if (!(alpha >= 0.0) || !(alpha < beta) || !std::isfinite(beta))
        throw std::invalid_argument("ProblemSpec: bounds must satisfy 0 <= alpha < beta < inf");
    if (tracking_target) {
        for (const Vector3& x : {Vector3(0.3, 0.7, 0.4), Vector3(0.9, 0.1, 0.55)}) {
            const double yd = (*tracking_target)(x);
            const double probe = yd + 0.25;
            if (std::abs(dL_eval(x, probe) - (probe - yd)) > 1e-12 ||
                std::abs(d2L_eval(x, probe) - 1.0) > 1e-12)
                throw std::invalid_argument(
                    "ProblemSpec: tracking_target declared but L is not (y - y_d)^2 / 2");
        }
    }
}

} // namespace robinssn
