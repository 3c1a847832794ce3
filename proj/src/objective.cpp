#include "robinssn/objective.hpp"

#include <algorithm>

namespace robinssn {

double objective_value(const ProblemSpec& problem, const Mesh& mesh, const BoundaryField& u,
                       const VolumeField& y) {
    double tracking = 0.0;
    if (problem.tracking_target) {
        const VolumeField target = interpolate_volume(mesh, *problem.tracking_target);
        const Eigen::VectorXd diff = y.values - target.values;
        tracking = 0.5 * diff.dot(assemble_volume_mass(mesh).apply(diff));
    } else {
        const VolumeField m = lumped_volume_mass(mesh);
        for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v)
            tracking += m[v] * problem.L_eval(mesh.vertices()[static_cast<std::size_t>(v)], y[v]);
    }
    const BoundaryField w = boundary_area_weights(mesh);
    const double tichonov = w.values.dot(u.values.cwiseAbs2());
    return tracking + 0.5 * problem.nu * tichonov;
}

BoundaryField gradient_representative(const ProblemSpec& problem, const Mesh& mesh,
                                      const BoundaryField& u, const VolumeField& y,
                                      const VolumeField& phi) {
    const BoundaryField y_trace = mesh.trace(y);
    const BoundaryField phi_trace = mesh.trace(phi);
    BoundaryField d(mesh.num_boundary_nodes());
    d.values = problem.nu * u.values - y_trace.values.cwiseProduct(phi_trace.values);
    return d;
}

BoundaryField hessvec(const LinearizedOperator& op, const ProblemSpec& problem,
                      const VolumeField& y, const VolumeField& phi, const BoundaryField& v) {
    const Mesh& mesh = op.mesh();
    const BoundaryField y_trace = mesh.trace(y);
    BoundaryField robin_datum(mesh.num_boundary_nodes());
    robin_datum.values = -v.values.cwiseProduct(y_trace.values);
    const VolumeField z = solve_linearized(op, VolumeField(), robin_datum);
    const VolumeField eta = solve_eta(op, problem, y, phi, z, v);

    const BoundaryField phi_trace = mesh.trace(phi);
    const BoundaryField z_trace = mesh.trace(z);
    const BoundaryField eta_trace = mesh.trace(eta);
    BoundaryField out(mesh.num_boundary_nodes());
    out.values = problem.nu * v.values - phi_trace.values.cwiseProduct(z_trace.values) -
                 y_trace.values.cwiseProduct(eta_trace.values);
    return out;
}

double second_derivative_form(const LinearizedOperator& op, const ProblemSpec& problem,
                              const VolumeField& y, const VolumeField& phi,
                              const BoundaryField& v1, const BoundaryField& v2) {
    const Mesh& mesh = op.mesh();
    const BoundaryField y_trace = mesh.trace(y);
    auto sensitivity = [&](const BoundaryField& v) {
        BoundaryField datum(mesh.num_boundary_nodes());
        datum.values = -v.values.cwiseProduct(y_trace.values);
        return solve_linearized(op, VolumeField(), datum);
    };
    const VolumeField z1 = sensitivity(v1);
    const VolumeField z2 = sensitivity(v2);

    double volume_term = 0.0;
    if (problem.tracking_target) {
        volume_term = z1.values.dot(op.volume_mass().apply(z2.values));
        for (Eigen::Index i = 0; i < mesh.num_vertices(); ++i)
            volume_term -= op.volume_weights()[i] * phi[i] *
                           problem.d2a_eval(mesh.vertices()[static_cast<std::size_t>(i)], y[i]) *
                           z1[i] * z2[i];
    } else {
        for (Eigen::Index i = 0; i < mesh.num_vertices(); ++i) {
            const Vector3& x = mesh.vertices()[static_cast<std::size_t>(i)];
            volume_term += op.volume_weights()[i] *
                           (problem.d2L_eval(x, y[i]) - phi[i] * problem.d2a_eval(x, y[i])) *
                           z1[i] * z2[i];
        }
    }

    const BoundaryField& w = op.boundary_weights();
    const BoundaryField phi_trace = mesh.trace(phi);
    const BoundaryField z1_trace = mesh.trace(z1);
    const BoundaryField z2_trace = mesh.trace(z2);
    double boundary_term = 0.0;
    double tichonov_term = 0.0;
    for (Eigen::Index s = 0; s < mesh.num_boundary_nodes(); ++s) {
        boundary_term -= w[s] * (v1[s] * z2_trace[s] + v2[s] * z1_trace[s]) * phi_trace[s];
        tichonov_term += w[s] * v1[s] * v2[s];
    }
    return volume_term + boundary_term + problem.nu * tichonov_term;
}

BoundaryField projection_residual(const ProblemSpec& problem, const Mesh& mesh,
                                  const BoundaryField& u, const VolumeField& y,
                                  const VolumeField& phi) {
    const BoundaryField y_trace = mesh.trace(y);
    const BoundaryField phi_trace = mesh.trace(phi);
    BoundaryField out(mesh.num_boundary_nodes());
    for (Eigen::Index s = 0; s < mesh.num_boundary_nodes(); ++s) {
        const double target = y_trace[s] * phi_trace[s] / problem.nu;
        out[s] = u[s] - std::clamp(target, problem.alpha, problem.beta);
    }
    return out;
}

} // namespace robinssn
