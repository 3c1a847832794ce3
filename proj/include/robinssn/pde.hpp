#ifndef ROBINSSN_PDE_HPP
#define ROBINSSN_PDE_HPP

#include <memory>
#include <optional>
#include <stdexcept>

#include "robinssn/problem.hpp"

namespace robinssn {

/// iterations counts matrix factorizations, the cost unit of the scheme; a
/// warm start that already satisfies the tolerance still pays one.
struct NewtonReport {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Raised when the inner Newton iteration for the state equation exhausts its
/// budget; carries the last residual norm.
class NewtonNonConvergence : public std::runtime_error {
public:
    NewtonNonConvergence(const std::string& what, double last_residual)
        : std::runtime_error(what), last_residual(last_residual) {}
    double last_residual;
};

/// Raised when the assembled linearization loses positive definiteness, i.e.
/// the control left the neighborhood on which the state equation is
/// well-posed.
class OperatorNotCoercive : public std::runtime_error {
public:
    explicit OperatorNotCoercive(const std::string& what) : std::runtime_error(what) {}
};

/// Factorized discrete operator K + J(y) + B(u) of the linearized state
/// equation: stiffness (with a0), lumped semilinear Jacobian at the current
/// state, and lumped Robin coupling with coefficient u. Supports forward and
/// transpose solves on the same factorization; immutable once built and safe
/// to share read-only, so solves may run concurrently.
class LinearizedOperator {
public:
    LinearizedOperator(const Mesh& mesh, SparseOperator matrix);

    VolumeField solve(const VolumeField& rhs) const;
    VolumeField solve_transpose(const VolumeField& rhs) const;

    /// Process-wide factorization counter, the cost unit of the outer
    /// method: one outer iteration pays exactly its reported Newton count.
    static long total_factorizations();

    const SparseOperator& matrix() const { return matrix_; }
    const Mesh& mesh() const { return *mesh_; }

    /// Lumped boundary weights of the mesh, cached for rhs scattering.
    const BoundaryField& boundary_weights() const { return boundary_weights_; }
    const VolumeField& volume_weights() const { return volume_weights_; }

    /// Consistent P1 volume mass, cached for tracking-type objectives.
    const SparseOperator& volume_mass() const { return volume_mass_; }

private:
    const Mesh* mesh_;
    SparseOperator matrix_;
    BoundaryField boundary_weights_;
    VolumeField volume_weights_;
    SparseOperator volume_mass_;
    std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> factorization_;
};

/// Assemble and factorize the linearization at (u, y).
LinearizedOperator make_linearized_operator(const ProblemSpec& problem, const Mesh& mesh,
                                            const BoundaryField& u, const VolumeField& y);

struct StateResult {
    VolumeField y;
    NewtonReport report;
    LinearizedOperator op;
};

/// Newton solve of the discrete state equation
///   K y + r(y) + B(u) y = b(g)
/// with the semilinear residual r by vertex quadrature. Stops when the
/// max-norm of the algebraic residual falls below tol_rel times the entry
/// residual (absolute floor 1e-14); at least one step is always taken so the
/// returned operator is freshly factorized. Nonnegative controls are always
/// admissible; mildly negative values are accepted as long as the linearized
/// operator stays positive definite (the factorization checks).
StateResult solve_state(const ProblemSpec& problem, const Mesh& mesh, const BoundaryField& u,
                        const VolumeField* warm_start = nullptr, double tol_rel = 1e-12,
                        int max_newton = 25);

/// Solve (K + J + B) z = rhs_volume + scatter(w .* rhs_boundary), i.e. the
/// linearized state equation with volume load rhs_volume and Robin datum
/// rhs_boundary.
VolumeField solve_linearized(const LinearizedOperator& op, const VolumeField& rhs_volume,
                             const BoundaryField& rhs_boundary);

/// Adjoint state: transpose solve with volume load dL/dy(x, y) by vertex
/// quadrature and zero boundary datum.
VolumeField solve_adjoint(const LinearizedOperator& op, const ProblemSpec& problem,
                          const VolumeField& y);

/// Second-order state sensitivity w = G''(u)(v1, v2) given z_i = G'(u) v_i.
VolumeField solve_second_sensitivity(const LinearizedOperator& op, const ProblemSpec& problem,
                                     const VolumeField& y, const VolumeField& z1,
                                     const VolumeField& z2, const BoundaryField& v1,
                                     const BoundaryField& v2);

/// Adjoint sensitivity eta = Phi'(u) v: transpose solve with volume load
/// [d2L/dy2 - phi d2a/dy2] z and boundary datum -v phi, given z = G'(u) v.
VolumeField solve_eta(const LinearizedOperator& op, const ProblemSpec& problem,
                      const VolumeField& y, const VolumeField& phi, const VolumeField& z,
                      const BoundaryField& v);

} // namespace robinssn

#endif
