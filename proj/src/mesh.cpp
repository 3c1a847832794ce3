#include "robinssn/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace robinssn {

namespace {

// The six permutations of the Kuhn split, with parity. Each permutation
// (p0,p1,p2) yields the tet (c, c+e_p0, c+e_p0+e_p1, c+e_p0+e_p1+e_p2); all
// six share the cell's main diagonal, so faces of adjacent cells match.
constexpr int kPerms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                              {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
constexpr bool kPermEven[6] = {true, true, true, false, false, false};

double signed_volume(const Vector3& a, const Vector3& b, const Vector3& c, const Vector3& d) {
    return (b - a).cross(c - a).dot(d - a) / 6.0;
}

double triangle_area(const Vector3& a, const Vector3& b, const Vector3& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

// A face lies on the cube boundary iff its three vertices share a coordinate
// equal to 0 or 1. Returns the outward normal axis/sign, or false.
bool classify_boundary_face(const Vector3& a, const Vector3& b, const Vector3& c,
                            Vector3& normal) {
    const double tol = 1e-12;
    for (int axis = 0; axis < 3; ++axis) {
        for (double value : {0.0, 1.0}) {
            if (std::abs(a[axis] - value) < tol && std::abs(b[axis] - value) < tol &&
                std::abs(c[axis] - value) < tol) {
                normal = Vector3::Zero();
                normal[axis] = (value == 0.0) ? -1.0 : 1.0;
                return true;
            }
        }
    }
    return false;
}

} // namespace

BoundaryField Mesh::trace(const VolumeField& f) const {
    BoundaryField out(num_boundary_nodes());
    for (Eigen::Index s = 0; s < out.size(); ++s)
        out[s] = f[boundary_nodes_[static_cast<std::size_t>(s)]];
    return out;
}

VolumeField Mesh::extend_by_zero(const BoundaryField& f) const {
    VolumeField out(num_vertices());
    for (Eigen::Index s = 0; s < f.size(); ++s)
        out[boundary_nodes_[static_cast<std::size_t>(s)]] = f[s];
    return out;
}

Mesh build_unit_cube_mesh(int n) {
    if (n < 1)
        throw std::invalid_argument("build_unit_cube_mesh: subdivision level must be >= 1, got " +
                                    std::to_string(n));

    Mesh mesh;
    mesh.level_ = n;
    const int np = n + 1;
    auto vertex_id = [np](int ix, int iy, int iz) { return ix + np * (iy + np * iz); };

    mesh.vertices_.reserve(static_cast<std::size_t>(np) * np * np);
    for (int iz = 0; iz < np; ++iz)
        for (int iy = 0; iy < np; ++iy)
            for (int ix = 0; ix < np; ++ix)
                mesh.vertices_.emplace_back(double(ix) / n, double(iy) / n, double(iz) / n);

    mesh.tets_.reserve(static_cast<std::size_t>(6) * n * n * n);
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix)
                for (int p = 0; p < 6; ++p) {
                    int corner[3] = {ix, iy, iz};
                    std::array<int, 4> tet;
                    tet[0] = vertex_id(corner[0], corner[1], corner[2]);
                    for (int k = 0; k < 3; ++k) {
                        corner[kPerms[p][k]] += 1;
                        tet[static_cast<std::size_t>(k) + 1] = vertex_id(corner[0], corner[1], corner[2]);
                    }
                    if (!kPermEven[p])
                        std::swap(tet[2], tet[3]);
                    mesh.tets_.push_back(tet);
                }

    // Per-tet volume and basis gradients.
    mesh.tet_volumes_.reserve(mesh.tets_.size());
    mesh.tet_gradients_.reserve(mesh.tets_.size());
    for (const auto& tet : mesh.tets_) {
        const Vector3& a = mesh.vertices_[static_cast<std::size_t>(tet[0])];
        const Vector3& b = mesh.vertices_[static_cast<std::size_t>(tet[1])];
        const Vector3& c = mesh.vertices_[static_cast<std::size_t>(tet[2])];
        const Vector3& d = mesh.vertices_[static_cast<std::size_t>(tet[3])];
        const double vol = signed_volume(a, b, c, d);
        if (vol <= 0.0)
            throw std::logic_error("build_unit_cube_mesh: non-positive tet volume");
        mesh.tet_volumes_.push_back(vol);

        Eigen::Matrix3d edges;
        edges.row(0) = (b - a).transpose();
        edges.row(1) = (c - a).transpose();
        edges.row(2) = (d - a).transpose();
        const Eigen::Matrix3d inv = edges.inverse();
        Eigen::Matrix<double, 4, 3> grads;
        for (int k = 0; k < 3; ++k)
            grads.row(k + 1) = inv.col(k).transpose();
        grads.row(0) = -(grads.row(1) + grads.row(2) + grads.row(3));
        mesh.tet_gradients_.push_back(grads);
    }

    // Boundary faces by the coordinate test, O(#tets).
    constexpr int kFaceLocal[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
    for (std::size_t t = 0; t < mesh.tets_.size(); ++t)
        for (const auto& local : kFaceLocal) {
            const std::array<int, 3> f = {mesh.tets_[t][static_cast<std::size_t>(local[0])],
                                          mesh.tets_[t][static_cast<std::size_t>(local[1])],
                                          mesh.tets_[t][static_cast<std::size_t>(local[2])]};
            const Vector3& a = mesh.vertices_[static_cast<std::size_t>(f[0])];
            const Vector3& b = mesh.vertices_[static_cast<std::size_t>(f[1])];
            const Vector3& c = mesh.vertices_[static_cast<std::size_t>(f[2])];
            Vector3 normal;
            if (classify_boundary_face(a, b, c, normal))
                mesh.boundary_faces_.push_back({f, static_cast<int>(t), triangle_area(a, b, c), normal});
        }

    mesh.boundary_slot_.assign(mesh.vertices_.size(), -1);
    for (std::size_t v = 0; v < mesh.vertices_.size(); ++v) {
        const Vector3& x = mesh.vertices_[v];
        for (int axis = 0; axis < 3; ++axis)
            if (x[axis] == 0.0 || x[axis] == 1.0) {
                mesh.boundary_nodes_.push_back(static_cast<int>(v));
                break;
            }
    }
    for (std::size_t s = 0; s < mesh.boundary_nodes_.size(); ++s)
        mesh.boundary_slot_[static_cast<std::size_t>(mesh.boundary_nodes_[s])] = static_cast<int>(s);

    return mesh;
}

BoundaryField boundary_area_weights(const Mesh& mesh) {
    BoundaryField weights(mesh.num_boundary_nodes());
    for (const auto& face : mesh.boundary_faces())
        for (int node : face.nodes)
            weights[mesh.boundary_slot(node)] += face.area / 3.0;
    return weights;
}

} // namespace robinssn
