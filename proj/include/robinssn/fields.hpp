#ifndef ROBINSSN_FIELDS_HPP
#define ROBINSSN_FIELDS_HPP

#include <Eigen/Dense>

namespace robinssn {

using Vector3 = Eigen::Vector3d;

/// Nodal coefficients of a P1 function on the closed domain: one value per
/// mesh vertex.
struct VolumeField {
    Eigen::VectorXd values;

    VolumeField() = default;
    explicit VolumeField(Eigen::Index size, double fill = 0.0)
        : values(Eigen::VectorXd::Constant(size, fill)) {}
    explicit VolumeField(Eigen::VectorXd v) : values(std::move(v)) {}

    Eigen::Index size() const { return values.size(); }
    double operator[](Eigen::Index i) const { return values[i]; }
    double& operator[](Eigen::Index i) { return values[i]; }
};

/// Nodal coefficients of a function living on the boundary only: one value
/// per boundary node, indexed by boundary slot (see Mesh::boundary_nodes).
struct BoundaryField {
    Eigen::VectorXd values;

    BoundaryField() = default;
    explicit BoundaryField(Eigen::Index size, double fill = 0.0)
        : values(Eigen::VectorXd::Constant(size, fill)) {}
    explicit BoundaryField(Eigen::VectorXd v) : values(std::move(v)) {}

    Eigen::Index size() const { return values.size(); }
    double operator[](Eigen::Index i) const { return values[i]; }
    double& operator[](Eigen::Index i) { return values[i]; }
};

} // namespace robinssn

#endif
