#include "robinssn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace robinssn {

double biactive_measure(const Mesh& mesh, const BoundaryField& u, const VolumeField& y,
                        const VolumeField& phi, double nu, double alpha, double beta,
                        double eps_sc) {
    const BoundaryField w = boundary_area_weights(mesh);
    const BoundaryField y_trace = mesh.trace(y);
    const BoundaryField phi_trace = mesh.trace(phi);
    double measure = 0.0;
    for (Eigen::Index s = 0; s < u.size(); ++s) {
        const bool at_bound = std::abs(u[s] - alpha) <= 1e-10 || std::abs(u[s] - beta) <= 1e-10;
        const bool gradient_zero = std::abs(nu * u[s] - y_trace[s] * phi_trace[s]) <= eps_sc;
        if (at_bound && gradient_zero)
            measure += w[s];
    }
    return measure;
}

double default_eps_sc(const ProblemSpec& problem) {
    return 1e-8 * problem.nu * std::max({std::abs(problem.alpha), std::abs(problem.beta), 1.0});
}

double coercivity_estimate(const LinearizedOperator& op, const ProblemSpec& problem,
                           const BoundaryField& u, const VolumeField& y, const VolumeField& phi,
                           double tau, int iterations) {
    const Mesh& mesh = op.mesh();
    const BoundaryField y_trace = mesh.trace(y);
    const BoundaryField phi_trace = mesh.trace(phi);
    const BoundaryField& w = op.boundary_weights();

    std::vector<Eigen::Index> subspace;
    for (Eigen::Index s = 0; s < u.size(); ++s)
        if (std::abs(problem.nu * u[s] - y_trace[s] * phi_trace[s]) <= tau)
            subspace.push_back(s);
    if (subspace.empty())
        throw std::runtime_error("coercivity_estimate: the tau-subspace is empty");

    auto mask = [&subspace, &u](const BoundaryField& v) {
        BoundaryField out(u.size());
        for (Eigen::Index s : subspace)
            out[s] = v[s];
        return out;
    };
    auto apply = [&](const BoundaryField& v) { return mask(hessvec(op, problem, y, phi, mask(v))); };
    auto dot = [&w](const BoundaryField& a, const BoundaryField& b) {
        return w.values.dot(a.values.cwiseProduct(b.values));
    };

    // Lanczos in the w-inner product restricted to the subspace, with full
    // reorthogonalization; exact once the iteration count reaches the
    // subspace dimension.
    const int steps = std::min<int>(iterations, static_cast<int>(subspace.size()));
    std::vector<BoundaryField> basis;
    std::vector<double> diag, offdiag;
    std::mt19937 rng(20230517);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    BoundaryField q(u.size());
    for (Eigen::Index s : subspace)
        q[s] = unit(rng);
    q.values /= std::sqrt(dot(q, q));
    BoundaryField q_prev(u.size());
    double beta_prev = 0.0;

    for (int k = 0; k < steps; ++k) {
        BoundaryField r = apply(q);
        const double a = dot(q, r);
        diag.push_back(a);
        r.values -= a * q.values + beta_prev * q_prev.values;
        basis.push_back(q);
        for (const BoundaryField& b : basis)
            r.values -= dot(b, r) * b.values;
        const double beta_k = std::sqrt(std::max(dot(r, r), 0.0));
        if (beta_k < 1e-13 || k + 1 == steps)
            break;
        offdiag.push_back(beta_k);
        q_prev = q;
        beta_prev = beta_k;
        q = r;
        q.values /= beta_k;
    }

    const int m = static_cast<int>(diag.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        tri(i, i) = diag[static_cast<std::size_t>(i)];
        if (i + 1 < m)
            tri(i, i + 1) = tri(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
    return eig.eigenvalues().minCoeff();
}

OptimalityReport make_optimality_report(const LinearizedOperator& op, const ProblemSpec& problem,
                                        const BoundaryField& u, const VolumeField& y,
                                        const VolumeField& phi, double tau,
                                        int lanczos_iterations) {
    const Mesh& mesh = op.mesh();
    OptimalityReport report;
    report.F_inf =
        projection_residual(problem, mesh, u, y, phi).values.cwiseAbs().maxCoeff();
    report.eps_sc = default_eps_sc(problem);
    report.biactive_measure = biactive_measure(mesh, u, y, phi, problem.nu, problem.alpha,
                                               problem.beta, report.eps_sc);
    report.tau = tau;
    report.lanczos_iterations = lanczos_iterations;
    try {
        report.coercivity = coercivity_estimate(op, problem, u, y, phi, tau, lanczos_iterations);
        report.coercivity_defined = true;
    } catch (const std::runtime_error&) {
        report.coercivity = 0.0;
        report.coercivity_defined = false;
    }
    return report;
}

FdAuditReport fd_derivative_audit(const ProblemSpec& problem, const Mesh& mesh,
                                  const BoundaryField& u,
                                  const std::vector<BoundaryField>& directions,
                                  const std::vector<double>& t_grid) {
    FdAuditReport report;
    report.t_grid = t_grid;

    StateResult base = solve_state(problem, mesh, u);
    const LinearizedOperator op = make_linearized_operator(problem, mesh, u, base.y);
    const VolumeField phi = solve_adjoint(op, problem, base.y);
    const double J0 = objective_value(problem, mesh, u, base.y);
    const BoundaryField grad = gradient_representative(problem, mesh, u, base.y, phi);
    const BoundaryField w = boundary_area_weights(mesh);

    auto median_rate = [](const std::vector<double>& remainders, const std::vector<double>& ts) {
        std::vector<double> rates;
        for (std::size_t i = 0; i + 1 < remainders.size(); ++i)
            if (remainders[i] > 0.0 && remainders[i + 1] > 0.0)
                rates.push_back(std::log(remainders[i] / remainders[i + 1]) /
                                std::log(ts[i] / ts[i + 1]));
        if (rates.empty())
            return 0.0;
        std::sort(rates.begin(), rates.end());
        return rates[rates.size() / 2];
    };

    for (const BoundaryField& v : directions) {
        const double slope = w.values.dot(grad.values.cwiseProduct(v.values));
        const BoundaryField hv = hessvec(op, problem, base.y, phi, v);
        const double curvature = w.values.dot(hv.values.cwiseProduct(v.values));

        std::vector<double> r1, r2;
        for (double t : t_grid) {
            BoundaryField shifted(u.size());
            shifted.values = u.values + t * v.values;
            StateResult state = solve_state(problem, mesh, shifted, &base.y);
            const double Jt = objective_value(problem, mesh, shifted, state.y);
            r1.push_back(std::abs(Jt - J0 - t * slope));
            r2.push_back(std::abs(Jt - J0 - t * slope - 0.5 * t * t * curvature));
        }
        report.first_order_remainders.push_back(r1);
        report.second_order_remainders.push_back(r2);
        report.first_order_rates.push_back(median_rate(r1, t_grid));
        report.second_order_rates.push_back(median_rate(r2, t_grid));
    }
    return report;
}

} // namespace robinssn
