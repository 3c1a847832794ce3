#ifndef ROBINSSN_SSN_HPP
#define ROBINSSN_SSN_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "robinssn/objective.hpp"

namespace robinssn {

/// Pointwise classification of the boundary nodes: A_beta where
/// y phi >= nu beta, A_alpha where y phi <= nu alpha (ties go to the active
/// sets), inactive in between. The three sets partition the boundary nodes.
struct ActiveSets {
    enum class Tag : unsigned char { LowerActive, Inactive, UpperActive };
    std::vector<Tag> tag;

    Eigen::Index count(Tag t) const;
    bool inactive(Eigen::Index slot) const { return tag[static_cast<std::size_t>(slot)] == Tag::Inactive; }
    bool active(Eigen::Index slot) const { return !inactive(slot); }
};

/// Per-outer-iteration log, one row of the convergence table. delta is empty
/// on the trailing record that only re-evaluates the final iterate.
struct IterationRecord {
    int j = 0;
    double J = 0.0;
    std::optional<double> delta;
    int newton = 0;
    int cg = 0;
    Eigen::Index n_active_alpha = 0;
    Eigen::Index n_active_beta = 0;
    Eigen::Index n_inactive = 0;
    double F_inf = 0.0;
};

class CgBreakdown : public std::runtime_error {
public:
    explicit CgBreakdown(const std::string& what) : std::runtime_error(what) {}
};

class CgMaxIterations : public std::runtime_error {
public:
    explicit CgMaxIterations(const std::string& what) : std::runtime_error(what) {}
};

/// Snapshot handed to the optional per-iteration observer.
struct SsnIterationView {
    int j;
    const BoundaryField& u;
    const BoundaryField& u_next;
    const VolumeField& y;
    const VolumeField& phi;
    const ActiveSets& sets;
    const BoundaryField& newton_step;
    const BoundaryField& qp_solution;
    const LinearizedOperator& op;
};

struct SsnConfig {
    double tol_delta = 1e-12;
    int max_outer = 30;
    double cg_tol = 1e-10;
    int cg_max = 500;
    double state_tol = 1e-12;
    int max_newton = 25;
    std::function<void(const SsnIterationView&)> observer;

    void validate() const;
};

struct SsnResult {
    BoundaryField u;
    std::vector<IterationRecord> history;
    bool converged = false;
    std::string failure;
};

ActiveSets compute_active_sets(const BoundaryField& y_trace, const BoundaryField& phi_trace,
                               double nu, double alpha, double beta);

/// Explicit part of the semismooth Newton step, w = -F(u) written branchwise:
/// beta - u on A_beta, (1/nu) y phi - u on the inactive set, alpha - u on
/// A_alpha.
BoundaryField newton_rhs(const BoundaryField& u, const BoundaryField& y_trace,
                         const BoundaryField& phi_trace, const ActiveSets& sets, double nu,
                         double alpha, double beta);

/// Reduced operator of the quadratic subproblem: (1/nu) times the
/// Hessian-vector product of the input masked to the inactive set, masked
/// again on output. Costs one forward and one transpose solve.
BoundaryField reduced_hess_apply(const LinearizedOperator& op, const ProblemSpec& problem,
                                 const VolumeField& y, const VolumeField& phi,
                                 const ActiveSets& sets, const BoundaryField& v);

struct ReducedQpResult {
    BoundaryField v;
    int cg_iterations = 0;
};

/// Conjugate gradients in the lumped-weight inner product on the inactive
/// set for the subproblem operator above, with right-hand side
/// b = chi_I (w + (1/nu)[z phi + y eta]) where z, eta carry the active-part
/// datum chi_A w. Stops when the residual norm falls below cg_tol times the
/// norm of b. Throws CgBreakdown on nonpositive curvature, CgMaxIterations
/// when the budget is exhausted.
ReducedQpResult solve_reduced_qp(const LinearizedOperator& op, const ProblemSpec& problem,
                                 const VolumeField& y, const VolumeField& phi,
                                 const ActiveSets& sets, const BoundaryField& w,
                                 const SsnConfig& cfg);

/// Outer semismooth Newton loop. Each iteration: warm-started state solve,
/// adjoint solve, active sets, explicit step on the active part, reduced CG
/// on the inactive part, update. Terminates when the relative step
/// delta_j = |u_{j+1} - u_j|_w / |u_{j+1}|_w drops below tol_delta; a
/// trailing record re-evaluates the final iterate (one more state solve,
/// no step). Iterates start from u0 clamped into [alpha, beta]. Inner-solver
/// failures are reported through SsnResult::failure with the partial history
/// attached rather than thrown.
SsnResult ssn_solve(const ProblemSpec& problem, const Mesh& mesh, const BoundaryField& u0,
                    const SsnConfig& cfg = {});

} // namespace robinssn

#endif
