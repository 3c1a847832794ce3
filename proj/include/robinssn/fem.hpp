#ifndef ROBINSSN_FEM_HPP
#define ROBINSSN_FEM_HPP

#include <functional>
#include <utility>

#include "robinssn/fields.hpp"
#include "robinssn/mesh.hpp"
#include "robinssn/sparse.hpp"

namespace robinssn {

/// Scalar coefficient on the volume, sampled at vertices.
using VolumeFn = std::function<double(const Vector3&)>;

/// Scalar function of (x, y) such as the nonlinearity or the objective
/// integrand and their y-derivatives.
using StateFn = std::function<double(const Vector3&, double)>;

/// Boundary datum evaluated with the outward unit normal of the facet; the
/// normal argument lets manufactured data be discontinuous across edges.
using BoundaryFn = std::function<double(const Vector3&, const Vector3&)>;

/// Matrix of the form integral of grad(phi_i).grad(phi_j) + a0 phi_i phi_j,
/// the zeroth-order term integrated by vertex quadrature (diagonal).
/// Rejects a0 < 0 at any vertex.
SparseOperator assemble_stiffness(const Mesh& mesh, const VolumeFn& a0);

/// Consistent boundary mass with P1 coefficient: entries are the exact
/// integrals over Gamma of coeff phi_i phi_j. Indexed by global vertex id.
SparseOperator assemble_boundary_mass(const Mesh& mesh, const BoundaryField& coeff);

/// Diagonal boundary mass (row sums of the consistent one); alias of
/// boundary_area_weights kept as the discrete L2(Gamma) inner-product weights.
BoundaryField assemble_lumped_boundary_mass(const Mesh& mesh);

/// Vertex-quadrature weights of the volume: m_i = sum of V_T/4 over tets
/// containing vertex i. The weights sum to |Omega| = 1.
VolumeField lumped_volume_mass(const Mesh& mesh);

/// Consistent P1 volume mass: entries are the exact integrals of
/// phi_i phi_j over Omega.
SparseOperator assemble_volume_mass(const Mesh& mesh);

/// Nodal interpolant of a scalar function.
VolumeField interpolate_volume(const Mesh& mesh, const VolumeFn& f);

/// Load vector with entries integral of f phi_i dx, f replaced by its P1
/// vertex interpolant (consistent volume mass times nodal values).
VolumeField assemble_volume_load(const Mesh& mesh, const VolumeFn& f);

/// Load vector with f evaluated at the interior points of the degree-2
/// four-point tet rule instead of interpolated; resolves data that vanish
/// on the vertex lattice.
VolumeField assemble_volume_load_pointwise(const Mesh& mesh, const VolumeFn& f);

/// Load vector with entries integral over Gamma of g phi_i ds, zero at
/// interior nodes.
VolumeField assemble_boundary_load(const Mesh& mesh, const BoundaryField& g);

/// Facet-aware variant: g is sampled per boundary triangle with that facet's
/// outward normal, then integrated as the facet-wise P1 interpolant.
VolumeField assemble_boundary_load(const Mesh& mesh, const BoundaryFn& g);

/// Semilinear terms by vertex (lumped) quadrature: the residual vector with
/// entries m_i a(x_i, y_i) and the diagonal Jacobian contribution
/// m_i da(x_i, y_i). The returned matrix is exactly the y-derivative of the
/// returned vector. Rejects da < 0 at any sampled point.
std::pair<VolumeField, SparseOperator> nonlinear_volume_terms(const Mesh& mesh,
                                                              const VolumeField& y,
                                                              const StateFn& a_eval,
                                                              const StateFn& da_eval);

} // namespace robinssn

#endif
