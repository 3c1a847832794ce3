#include "robinssn/fem.hpp"

#include <stdexcept>
#include <string>

namespace robinssn {

namespace {

// Exact integrals of products of barycentric factors on a triangle of area A:
// lambda_i^3 -> A/10, lambda_i^2 lambda_j -> A/30, lambda_i lambda_j lambda_k -> A/60,
// lambda_i^2 -> A/6, lambda_i lambda_j -> A/12.
void boundary_mass_local(double area, const double c[3], double local[3][3]) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                const int k1 = (i + 1) % 3, k2 = (i + 2) % 3;
                local[i][j] = area * (c[i] / 10.0 + (c[k1] + c[k2]) / 30.0);
            } else {
                const int k = 3 - i - j;
                local[i][j] = area * ((c[i] + c[j]) / 30.0 + c[k] / 60.0);
            }
        }
}

} // namespace

SparseOperator assemble_stiffness(const Mesh& mesh, const VolumeFn& a0) {
    const Eigen::Index nv = mesh.num_vertices();
    std::vector<SparseOperator::Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(mesh.num_tets()) * 16);

    for (std::size_t t = 0; t < static_cast<std::size_t>(mesh.num_tets()); ++t) {
        const auto& tet = mesh.tets()[t];
        const auto& grads = mesh.tet_gradients(t);
        const double vol = mesh.tet_volume(t);
        for (int i = 0; i < 4; ++i) {
            triplets.push_back({tet[static_cast<std::size_t>(i)], tet[static_cast<std::size_t>(i)],
                                vol * grads.row(i).squaredNorm()});
            for (int j = i + 1; j < 4; ++j) {
                const double value = vol * grads.row(i).dot(grads.row(j));
                triplets.push_back({tet[static_cast<std::size_t>(i)], tet[static_cast<std::size_t>(j)], value});
                triplets.push_back({tet[static_cast<std::size_t>(j)], tet[static_cast<std::size_t>(i)], value});
            }
        }
    }

    const VolumeField m = lumped_volume_mass(mesh);
    for (Eigen::Index v = 0; v < nv; ++v) {
        const double a0v = a0(mesh.vertices()[static_cast<std::size_t>(v)]);
        if (a0v < 0.0)
            throw std::invalid_argument("assemble_stiffness: a0 negative at vertex " + std::to_string(v));
        if (a0v != 0.0)
            triplets.push_back({static_cast<int>(v), static_cast<int>(v), m[v] * a0v});
    }
    return SparseOperator::from_triplets(nv, std::move(triplets), true);
}

SparseOperator assemble_boundary_mass(const Mesh& mesh, const BoundaryField& coeff) {
    if (coeff.size() != mesh.num_boundary_nodes())
        throw std::invalid_argument("assemble_boundary_mass: coefficient size mismatch");
    std::vector<SparseOperator::Triplet> triplets;
    triplets.reserve(mesh.boundary_faces().size() * 9);
    for (const auto& face : mesh.boundary_faces()) {
        double c[3];
        for (int i = 0; i < 3; ++i)
            c[i] = coeff[mesh.boundary_slot(face.nodes[static_cast<std::size_t>(i)])];
        double local[3][3];
        boundary_mass_local(face.area, c, local);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                triplets.push_back({face.nodes[static_cast<std::size_t>(i)],
                                    face.nodes[static_cast<std::size_t>(j)], local[i][j]});
    }
    return SparseOperator::from_triplets(mesh.num_vertices(), std::move(triplets), true);
}

BoundaryField assemble_lumped_boundary_mass(const Mesh& mesh) {
    return boundary_area_weights(mesh);
}

VolumeField lumped_volume_mass(const Mesh& mesh) {
    VolumeField m(mesh.num_vertices());
    for (std::size_t t = 0; t < static_cast<std::size_t>(mesh.num_tets()); ++t)
        for (int node : mesh.tets()[t])
            m[node] += mesh.tet_volume(t) / 4.0;
    return m;
}

SparseOperator assemble_volume_mass(const Mesh& mesh) {
    // Exact P1 integrals: lambda_i^2 -> V/10, lambda_i lambda_j -> V/20.
    std::vector<SparseOperator::Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(mesh.num_tets()) * 16);
    for (std::size_t t = 0; t < static_cast<std::size_t>(mesh.num_tets()); ++t) {
        const auto& tet = mesh.tets()[t];
        const double vol = mesh.tet_volume(t);
        for (int i = 0; i < 4; ++i) {
            triplets.push_back({tet[static_cast<std::size_t>(i)], tet[static_cast<std::size_t>(i)], vol / 10.0});
            for (int j = i + 1; j < 4; ++j) {
                triplets.push_back({tet[static_cast<std::size_t>(i)], tet[static_cast<std::size_t>(j)], vol / 20.0});
                triplets.push_back({tet[static_cast<std::size_t>(j)], tet[static_cast<std::size_t>(i)], vol / 20.0});
            }
        }
    }
    return SparseOperator::from_triplets(mesh.num_vertices(), std::move(triplets), true);
}

VolumeField interpolate_volume(const Mesh& mesh, const VolumeFn& f) {
    VolumeField out(mesh.num_vertices());
    for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v)
        out[v] = f(mesh.vertices()[static_cast<std::size_t>(v)]);
    return out;
}

VolumeField assemble_volume_load(const Mesh& mesh, const VolumeFn& f) {
    const SparseOperator mass = assemble_volume_mass(mesh);
    return VolumeField(mass.apply(interpolate_volume(mesh, f).values));
}

VolumeField assemble_volume_load_pointwise(const Mesh& mesh, const VolumeFn& f) {
    constexpr double kAlpha = 0.5854101966249685;
    constexpr double kBeta = 0.1381966011250105;
    VolumeField load(mesh.num_vertices());
    for (std::size_t t = 0; t < static_cast<std::size_t>(mesh.num_tets()); ++t) {
        const auto& tet = mesh.tets()[t];
        const double quarter_vol = mesh.tet_volume(t) / 4.0;
        for (int q = 0; q < 4; ++q) {
            double bary[4] = {kBeta, kBeta, kBeta, kBeta};
            bary[q] = kAlpha;
            Vector3 x = Vector3::Zero();
            for (int i = 0; i < 4; ++i)
                x += bary[i] * mesh.vertices()[static_cast<std::size_t>(tet[static_cast<std::size_t>(i)])];
            const double fx = f(x);
            for (int i = 0; i < 4; ++i)
                load[tet[static_cast<std::size_t>(i)]] += quarter_vol * fx * bary[i];
        }
    }
    return load;
}

namespace {

VolumeField boundary_load_from_facet_values(
    const Mesh& mesh, const std::function<double(const BoundaryFace&, int)>& value) {
    VolumeField load(mesh.num_vertices());
    for (const auto& face : mesh.boundary_faces()) {
        double g[3];
        for (int i = 0; i < 3; ++i)
            g[i] = value(face, i);
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            load[face.nodes[static_cast<std::size_t>(i)]] +=
                face.area * (g[i] / 6.0 + (g[j] + g[k]) / 12.0);
        }
    }
    return load;
}

} // namespace

VolumeField assemble_boundary_load(const Mesh& mesh, const BoundaryField& g) {
    if (g.size() != mesh.num_boundary_nodes())
        throw std::invalid_argument("assemble_boundary_load: datum size mismatch");
    return boundary_load_from_facet_values(mesh, [&](const BoundaryFace& face, int i) {
        return g[mesh.boundary_slot(face.nodes[static_cast<std::size_t>(i)])];
    });
}

VolumeField assemble_boundary_load(const Mesh& mesh, const BoundaryFn& g) {
    if (!g)
        return VolumeField(mesh.num_vertices());
    return boundary_load_from_facet_values(mesh, [&](const BoundaryFace& face, int i) {
        const Vector3& x = mesh.vertices()[static_cast<std::size_t>(face.nodes[static_cast<std::size_t>(i)])];
        return g(x, face.outward_normal);
    });
}

std::pair<VolumeField, SparseOperator> nonlinear_volume_terms(const Mesh& mesh,
                                                              const VolumeField& y,
                                                              const StateFn& a_eval,
                                                              const StateFn& da_eval) {
    if (y.size() != mesh.num_vertices())
        throw std::invalid_argument("nonlinear_volume_terms: state size mismatch");
    const VolumeField m = lumped_volume_mass(mesh);
    VolumeField residual(mesh.num_vertices());
    std::vector<SparseOperator::Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(mesh.num_vertices()));
    for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v) {
        const Vector3& x = mesh.vertices()[static_cast<std::size_t>(v)];
        residual[v] = m[v] * a_eval(x, y[v]);
        const double slope = da_eval(x, y[v]);
        if (slope < 0.0)
            throw std::invalid_argument("nonlinear_volume_terms: da/dy negative at vertex " +
                                        std::to_string(v));
        if (slope != 0.0)
            triplets.push_back({static_cast<int>(v), static_cast<int>(v), m[v] * slope});
    }
    return {std::move(residual),
            SparseOperator::from_triplets(mesh.num_vertices(), std::move(triplets), true)};
}

} // namespace robinssn
