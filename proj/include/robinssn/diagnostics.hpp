#ifndef ROBINSSN_DIAGNOSTICS_HPP
#define ROBINSSN_DIAGNOSTICS_HPP

#include <vector>

#include "robinssn/ssn.hpp"

namespace robinssn {

/// Numerical companions of the optimality theory at a converged triple.
struct OptimalityReport {
    double F_inf = 0.0;
    double biactive_measure = 0.0;
    double eps_sc = 0.0;
    double coercivity = 0.0;
    double tau = 0.0;
    int lanczos_iterations = 0;
    bool coercivity_defined = false;  // false when the tau-subspace is empty
};

/// Lumped-weight measure of the biactive set: boundary nodes sitting on a
/// bound (within 1e-10) whose gradient representative vanishes within eps_sc.
double biactive_measure(const Mesh& mesh, const BoundaryField& u, const VolumeField& y,
                        const VolumeField& phi, double nu, double alpha, double beta,
                        double eps_sc);

/// Smallest Rayleigh quotient of the w-weighted Hessian on the span of
/// boundary nodes with |nu u - y phi| <= tau, estimated by Lanczos
/// tridiagonalization with full reorthogonalization and a fixed iteration
/// budget. Throws std::runtime_error when the subspace is empty.
double coercivity_estimate(const LinearizedOperator& op, const ProblemSpec& problem,
                           const BoundaryField& u, const VolumeField& y, const VolumeField& phi,
                           double tau, int iterations);

/// Default tolerance for "gradient equal to zero" in the biactive test,
/// scaled to the gradient's natural magnitude.
double default_eps_sc(const ProblemSpec& problem);

/// Assemble the full report at a converged triple; coercivity_defined is
/// false (and coercivity 0) when the tau-subspace is empty.
OptimalityReport make_optimality_report(const LinearizedOperator& op, const ProblemSpec& problem,
                                        const BoundaryField& u, const VolumeField& y,
                                        const VolumeField& phi, double tau = 1e-6,
                                        int lanczos_iterations = 60);

/// Taylor-remainder table of J along given directions: first-order remainder
/// against the adjoint gradient and second-order remainder against the
/// Hessian-vector product, with observed convergence orders per direction.
struct FdAuditReport {
    std::vector<double> t_grid;
    std::vector<std::vector<double>> first_order_remainders;   // [direction][t]
    std::vector<std::vector<double>> second_order_remainders;  // [direction][t]
    std::vector<double> first_order_rates;                     // median observed order
    std::vector<double> second_order_rates;
};

FdAuditReport fd_derivative_audit(const ProblemSpec& problem, const Mesh& mesh,
                                  const BoundaryField& u,
                                  const std::vector<BoundaryField>& directions,
                                  const std::vector<double>& t_grid);

} // namespace robinssn

#endif
