#ifndef ROBINSSN_MESH_HPP
#define ROBINSSN_MESH_HPP

#include <array>
#include <vector>

#include "robinssn/fields.hpp"

namespace robinssn {

/// Boundary triangle with a back reference to the tetrahedron it belongs to.
struct BoundaryFace {
    std::array<int, 3> nodes;
    int tet;
    double area;
    Vector3 outward_normal;
};

/// Conforming tetrahedral partition of the unit cube (0,1)^3 obtained by
/// slicing each cell of a uniform n^3 grid into six tetrahedra (Kuhn split).
/// Immutable after construction; safe to share read-only across threads.
class Mesh {
public:
    const std::vector<Vector3>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 4>>& tets() const { return tets_; }
    const std::vector<BoundaryFace>& boundary_faces() const { return boundary_faces_; }

    /// Sorted global indices of the vertices lying on the boundary.
    const std::vector<int>& boundary_nodes() const { return boundary_nodes_; }

    /// Boundary slot of a vertex, or -1 for interior vertices.
    int boundary_slot(int vertex) const { return boundary_slot_[static_cast<std::size_t>(vertex)]; }

    int level() const { return level_; }
    double mesh_size() const { return 1.0 / level_; }

    Eigen::Index num_vertices() const { return static_cast<Eigen::Index>(vertices_.size()); }
    Eigen::Index num_tets() const { return static_cast<Eigen::Index>(tets_.size()); }
    Eigen::Index num_boundary_nodes() const { return static_cast<Eigen::Index>(boundary_nodes_.size()); }

    double tet_volume(std::size_t t) const { return tet_volumes_[t]; }

    /// Constant gradients of the four barycentric basis functions on tet t,
    /// one row per local vertex.
    const Eigen::Matrix<double, 4, 3>& tet_gradients(std::size_t t) const { return tet_gradients_[t]; }

    /// Restrict a volume field to the boundary nodes.
    BoundaryField trace(const VolumeField& f) const;

    /// Extend a boundary field by zero to all vertices.
    VolumeField extend_by_zero(const BoundaryField& f) const;

private:
    friend Mesh build_unit_cube_mesh(int n);

    std::vector<Vector3> vertices_;
    std::vector<std::array<int, 4>> tets_;
    std::vector<BoundaryFace> boundary_faces_;
    std::vector<int> boundary_nodes_;
    std::vector<int> boundary_slot_;
    std::vector<double> tet_volumes_;
    std::vector<Eigen::Matrix<double, 4, 3>> tet_gradients_;
    int level_ = 0;
};

/// Build the level-n mesh: (n+1)^3 lattice vertices, 6n^3 positively oriented
/// tets, 12n^2 boundary triangles. Throws std::invalid_argument for n < 1.
Mesh build_unit_cube_mesh(int n);

/// Diagonal of the lumped boundary mass matrix: weight of boundary node i is
/// one third of the total area of the boundary triangles containing it.
/// The weights sum to the boundary measure |Gamma| = 6.
BoundaryField boundary_area_weights(const Mesh& mesh);

} // namespace robinssn

#endif
