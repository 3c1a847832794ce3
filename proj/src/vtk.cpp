#include "robinssn/vtk.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace robinssn {

void write_vtk(std::ostream& out, const Mesh& mesh,
               const std::vector<std::pair<std::string, VolumeField>>& point_data,
               const std::string& title) {
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.num_vertices() << " double\n";
    out.precision(17);
    for (const Vector3& x : mesh.vertices())
        out << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';

    out << "CELLS " << mesh.num_tets() << ' ' << 5 * mesh.num_tets() << '\n';
    for (const auto& tet : mesh.tets())
        out << "4 " << tet[0] << ' ' << tet[1] << ' ' << tet[2] << ' ' << tet[3] << '\n';
    out << "CELL_TYPES " << mesh.num_tets() << '\n';
    for (Eigen::Index t = 0; t < mesh.num_tets(); ++t)
        out << "10\n";

    if (!point_data.empty()) {
        out << "POINT_DATA " << mesh.num_vertices() << '\n';
        for (const auto& [name, field] : point_data) {
            if (field.size() != mesh.num_vertices())
                throw std::invalid_argument("write_vtk: field '" + name + "' size mismatch");
            out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
            for (Eigen::Index v = 0; v < field.size(); ++v)
                out << field[v] << '\n';
        }
    }
}

void write_vtk_file(const std::string& path, const Mesh& mesh,
                    const std::vector<std::pair<std::string, VolumeField>>& point_data,
                    const std::string& title) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_vtk_file: cannot open " + path);
    write_vtk(out, mesh, point_data, title);
}

} // namespace robinssn
