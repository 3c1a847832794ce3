#include "robinssn/ssn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robinssn {

namespace {

BoundaryField mask_active(const BoundaryField& v, const ActiveSets& sets) {
    BoundaryField out(v.size());
    for (Eigen::Index s = 0; s < v.size(); ++s)
        out[s] = sets.active(s) ? v[s] : 0.0;
    return out;
}

BoundaryField mask_inactive(const BoundaryField& v, const ActiveSets& sets) {
    BoundaryField out(v.size());
    for (Eigen::Index s = 0; s < v.size(); ++s)
        out[s] = sets.inactive(s) ? v[s] : 0.0;
    return out;
}

double weighted_dot(const BoundaryField& w, const BoundaryField& a, const BoundaryField& b) {
    return w.values.dot(a.values.cwiseProduct(b.values));
}

} // namespace

Eigen::Index ActiveSets::count(Tag t) const {
    return static_cast<Eigen::Index>(std::count(tag.begin(), tag.end(), t));
}

void SsnConfig::validate() const {
    if (!(tol_delta > 0.0) || !(cg_tol > 0.0) || !(state_tol > 0.0))
        throw std::invalid_argument("SsnConfig: tolerances must be positive");
    if (max_outer < 1 || cg_max < 1 || max_newton < 1)
        throw std::invalid_argument("SsnConfig: iteration budgets must be positive");
}

ActiveSets compute_active_sets(const BoundaryField& y_trace, const BoundaryField& phi_trace,
                               double nu, double alpha, double beta) {
    ActiveSets sets;
    sets.tag.resize(static_cast<std::size_t>(y_trace.size()));
    for (Eigen::Index s = 0; s < y_trace.size(); ++s) {
        const double product = y_trace[s] * phi_trace[s];
        if (product >= nu * beta)
            sets.tag[static_cast<std::size_t>(s)] = ActiveSets::Tag::UpperActive;
        else if (product <= nu * alpha)
            sets.tag[static_cast<std::size_t>(s)] = ActiveSets::Tag::LowerActive;
        else
            sets.tag[static_cast<std::size_t>(s)] = ActiveSets::Tag::Inactive;
    }
    return sets;
}

BoundaryField newton_rhs(const BoundaryField& u, const BoundaryField& y_trace,
                         const BoundaryField& phi_trace, const ActiveSets& sets, double nu,
                         double alpha, double beta) {
    BoundaryField w(u.size());
    for (Eigen::Index s = 0; s < u.size(); ++s)
        switch (sets.tag[static_cast<std::size_t>(s)]) {
            case ActiveSets::Tag::UpperActive: w[s] = beta - u[s]; break;
            case ActiveSets::Tag::Inactive: w[s] = y_trace[s] * phi_trace[s] / nu - u[s]; break;
            case ActiveSets::Tag::LowerActive: w[s] = alpha - u[s]; break;
        }
    return w;
}

BoundaryField reduced_hess_apply(const LinearizedOperator& op, const ProblemSpec& problem,
                                 const VolumeField& y, const VolumeField& phi,
                                 const ActiveSets& sets, const BoundaryField& v) {
    const BoundaryField masked = mask_inactive(v, sets);
    BoundaryField out = hessvec(op, problem, y, phi, masked);
    out.values /= problem.nu;
    return mask_inactive(out, sets);
}

ReducedQpResult solve_reduced_qp(const LinearizedOperator& op, const ProblemSpec& problem,
                                 const VolumeField& y, const VolumeField& phi,
                                 const ActiveSets& sets, const BoundaryField& w,
                                 const SsnConfig& cfg) {
    const Mesh& mesh = op.mesh();
    const BoundaryField& weights = op.boundary_weights();
    const BoundaryField y_trace = mesh.trace(y);
    const BoundaryField phi_trace = mesh.trace(phi);

    // Right-hand side: the active-part datum enters through one linearized
    // and one transpose solve.
    const BoundaryField w_active = mask_active(w, sets);
    BoundaryField b(w.size());
    if (w_active.values.cwiseAbs().maxCoeff() > 0.0) {
        BoundaryField datum(w.size());
        datum.values = -w_active.values.cwiseProduct(y_trace.values);
        const VolumeField z = solve_linearized(op, VolumeField(), datum);
        const VolumeField eta = solve_eta(op, problem, y, phi, z, w_active);
        const BoundaryField z_trace = mesh.trace(z);
        const BoundaryField eta_trace = mesh.trace(eta);
        b.values = w.values + (phi_trace.values.cwiseProduct(z_trace.values) +
                               y_trace.values.cwiseProduct(eta_trace.values)) /
                                  problem.nu;
    } else {
        b.values = w.values;
    }
    b = mask_inactive(b, sets);

    ReducedQpResult result{BoundaryField(w.size()), 0};
    const double b_norm2 = weighted_dot(weights, b, b);
    if (b_norm2 == 0.0)
        return result;

    BoundaryField r = b;
    BoundaryField p = r;
    double rho = b_norm2;
    for (int it = 1; it <= cfg.cg_max; ++it) {
        const BoundaryField q = reduced_hess_apply(op, problem, y, phi, sets, p);
        const double curvature = weighted_dot(weights, p, q);
        if (curvature <= 0.0)
            throw CgBreakdown("solve_reduced_qp: nonpositive curvature encountered (reduced "
                              "Hessian not coercive)");
        const double step = rho / curvature;
        result.v.values += step * p.values;
        r.values -= step * q.values;
        result.cg_iterations = it;
        const double rho_next = weighted_dot(weights, r, r);
        if (std::sqrt(rho_next) <= cfg.cg_tol * std::sqrt(b_norm2))
            return result;
        p.values = r.values + (rho_next / rho) * p.values;
        rho = rho_next;
    }
    throw CgMaxIterations("solve_reduced_qp: no convergence within " + std::to_string(cfg.cg_max) +
                          " CG iterations");
}

SsnResult ssn_solve(const ProblemSpec& problem, const Mesh& mesh, const BoundaryField& u0,
                    const SsnConfig& cfg) {
    problem.validate();
    cfg.validate();
    if (u0.size() != mesh.num_boundary_nodes())
        throw std::invalid_argument("ssn_solve: u0 size mismatch");

    const BoundaryField weights = boundary_area_weights(mesh);
    auto weighted_norm = [&weights](const BoundaryField& f) {
        return std::sqrt(weights.values.dot(f.values.cwiseAbs2()));
    };

    SsnResult result;
    result.u = u0;
    for (Eigen::Index s = 0; s < result.u.size(); ++s)
        result.u[s] = std::clamp(result.u[s], problem.alpha, problem.beta);

    VolumeField warm;
    bool have_warm = false;
    int j = 0;
    try {
        for (; j < cfg.max_outer; ++j) {
            StateResult state = solve_state(problem, mesh, result.u, have_warm ? &warm : nullptr,
                                            cfg.state_tol, cfg.max_newton);
            warm = state.y;
            have_warm = true;
            const VolumeField phi = solve_adjoint(state.op, problem, state.y);
            const BoundaryField y_trace = mesh.trace(state.y);
            const BoundaryField phi_trace = mesh.trace(phi);

            IterationRecord rec;
            rec.j = j;
            rec.J = objective_value(problem, mesh, result.u, state.y);
            rec.newton = state.report.iterations;
            rec.F_inf = projection_residual(problem, mesh, result.u, state.y, phi)
                            .values.cwiseAbs()
                            .maxCoeff();

            const ActiveSets sets = compute_active_sets(y_trace, phi_trace, problem.nu,
                                                        problem.alpha, problem.beta);
            rec.n_active_alpha = sets.count(ActiveSets::Tag::LowerActive);
            rec.n_active_beta = sets.count(ActiveSets::Tag::UpperActive);
            rec.n_inactive = sets.count(ActiveSets::Tag::Inactive);

            const BoundaryField w = newton_rhs(result.u, y_trace, phi_trace, sets, problem.nu,
                                               problem.alpha, problem.beta);
            ReducedQpResult qp = solve_reduced_qp(state.op, problem, state.y, phi, sets, w, cfg);
            rec.cg = qp.cg_iterations;

            // Active nodes land exactly on their bound; inactive nodes take
            // the QP step.
            BoundaryField u_next(result.u.size());
            for (Eigen::Index s = 0; s < result.u.size(); ++s)
                switch (sets.tag[static_cast<std::size_t>(s)]) {
                    case ActiveSets::Tag::UpperActive: u_next[s] = problem.beta; break;
                    case ActiveSets::Tag::LowerActive: u_next[s] = problem.alpha; break;
                    case ActiveSets::Tag::Inactive: u_next[s] = result.u[s] + qp.v[s]; break;
                }

            BoundaryField step(result.u.size());
            step.values = u_next.values - result.u.values;
            const double step_norm = weighted_norm(step);
            const double delta = step_norm == 0.0 ? 0.0 : step_norm / weighted_norm(u_next);
            rec.delta = delta;
            result.history.push_back(rec);

            if (cfg.observer)
                cfg.observer({j, result.u, u_next, state.y, phi, sets, w, qp.v, state.op});

            result.u = u_next;
            if (delta <= cfg.tol_delta) {
                result.converged = true;
                ++j;
                break;
            }
        }

        // Trailing evaluation of the final iterate, as in the convergence
        // tables: state solve and diagnostics only, no step.
        StateResult state = solve_state(problem, mesh, result.u, have_warm ? &warm : nullptr,
                                        cfg.state_tol, cfg.max_newton);
        const VolumeField phi = solve_adjoint(state.op, problem, state.y);
        const ActiveSets sets = compute_active_sets(mesh.trace(state.y), mesh.trace(phi),
                                                    problem.nu, problem.alpha, problem.beta);
        IterationRecord rec;
        rec.j = j;
        rec.J = objective_value(problem, mesh, result.u, state.y);
        rec.newton = state.report.iterations;
        rec.F_inf = projection_residual(problem, mesh, result.u, state.y, phi)
                        .values.cwiseAbs()
                        .maxCoeff();
        rec.n_active_alpha = sets.count(ActiveSets::Tag::LowerActive);
        rec.n_active_beta = sets.count(ActiveSets::Tag::UpperActive);
        rec.n_inactive = sets.count(ActiveSets::Tag::Inactive);
        result.history.push_back(rec);

        if (!result.converged)
            result.failure = "ssn_solve: no convergence within " + std::to_string(cfg.max_outer) +
                             " outer iterations";
    } catch (const NewtonNonConvergence& e) {
        result.converged = false;
        result.failure = e.what();
    } catch (const OperatorNotCoercive& e) {
        result.converged = false;
        result.failure = e.what();
    } catch (const CgBreakdown& e) {
        result.converged = false;
        result.failure = e.what();
    } catch (const CgMaxIterations& e) {
        result.converged = false;
        result.failure = e.what();
    }
    return result;
}

} // namespace robinssn
