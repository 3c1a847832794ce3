#ifndef ROBINSSN_OBJECTIVE_HPP
#define ROBINSSN_OBJECTIVE_HPP

#include "robinssn/pde.hpp"

namespace robinssn {

/// J(u) = integral of L(x, y) by vertex quadrature plus the Tichonov term
/// (nu/2) sum_i w_i u_i^2 with the lumped boundary weights.
double objective_value(const ProblemSpec& problem, const Mesh& mesh, const BoundaryField& u,
                       const VolumeField& y);

/// Nodal gradient representative d_i = nu u_i - y_i phi_i on the boundary;
/// the directional derivative is the w-weighted pairing <d, v>.
BoundaryField gradient_representative(const ProblemSpec& problem, const Mesh& mesh,
                                      const BoundaryField& u, const VolumeField& y,
                                      const VolumeField& phi);

/// Hessian-vector product nu v - (phi z + y eta) on the boundary, using one
/// linearized solve and one transpose solve on the cached factorization.
BoundaryField hessvec(const LinearizedOperator& op, const ProblemSpec& problem,
                      const VolumeField& y, const VolumeField& phi, const BoundaryField& v);

/// The bilinear second-derivative form evaluated from its volume/boundary
/// integral representation; agrees with the w-pairing of hessvec at solver
/// precision.
double second_derivative_form(const LinearizedOperator& op, const ProblemSpec& problem,
                              const VolumeField& y, const VolumeField& phi,
                              const BoundaryField& v1, const BoundaryField& v2);

/// F(u) = u - Proj_[alpha,beta]((1/nu) y phi) nodally on the boundary.
BoundaryField projection_residual(const ProblemSpec& problem, const Mesh& mesh,
                                  const BoundaryField& u, const VolumeField& y,
                                  const VolumeField& phi);

} // namespace robinssn

#endif
