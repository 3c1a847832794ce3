#ifndef ROBINSSN_VTK_HPP
#define ROBINSSN_VTK_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "robinssn/mesh.hpp"

namespace robinssn {

/// Legacy ASCII VTK unstructured-grid export of the mesh with optional nodal
/// scalar fields (one value per vertex) for visual inspection.
void write_vtk(std::ostream& out, const Mesh& mesh,
               const std::vector<std::pair<std::string, VolumeField>>& point_data = {},
               const std::string& title = "robinssn export");

void write_vtk_file(const std::string& path, const Mesh& mesh,
                    const std::vector<std::pair<std::string, VolumeField>>& point_data = {},
                    const std::string& title = "robinssn export");

} // namespace robinssn

#endif
