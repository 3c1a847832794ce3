#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "robinssn/mesh.hpp"

using namespace robinssn;

namespace {

double brute_force_signed_volume(const Mesh& mesh, const std::array<int, 4>& tet) {
    const Vector3& a = mesh.vertices()[static_cast<std::size_t>(tet[0])];
    const Vector3& b = mesh.vertices()[static_cast<std::size_t>(tet[1])];
    const Vector3& c = mesh.vertices()[static_cast<std::size_t>(tet[2])];
    const Vector3& d = mesh.vertices()[static_cast<std::size_t>(tet[3])];
    Eigen::Matrix3d m;
    m.col(0) = b - a;
    m.col(1) = c - a;
    m.col(2) = d - a;
    return m.determinant() / 6.0;
}

} // namespace

TEST_CASE("level 1 mesh has the counts forced by the Kuhn split") {
    const Mesh mesh = build_unit_cube_mesh(1);
    CHECK(mesh.num_vertices() == 8);
    CHECK(mesh.num_tets() == 6);
    CHECK(mesh.boundary_faces().size() == 12);
    CHECK(mesh.num_boundary_nodes() == 8);

    double volume = 0.0;
    for (Eigen::Index t = 0; t < mesh.num_tets(); ++t)
        volume += mesh.tet_volume(static_cast<std::size_t>(t));
    CHECK(volume == doctest::Approx(1.0).epsilon(1e-14));

    double area = 0.0;
    for (const auto& face : mesh.boundary_faces())
        area += face.area;
    CHECK(area == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("level 16 mesh counts") {
    const Mesh mesh = build_unit_cube_mesh(16);
    CHECK(mesh.num_vertices() == 4913);
    CHECK(mesh.num_tets() == 24576);
    CHECK(mesh.boundary_faces().size() == 3072);
    CHECK(mesh.num_boundary_nodes() == 1538);
}

TEST_CASE("level 2 per-tet volumes are all 1/48 by brute force") {
    const Mesh mesh = build_unit_cube_mesh(2);
    for (std::size_t t = 0; t < static_cast<std::size_t>(mesh.num_tets()); ++t) {
        const double vol = brute_force_signed_volume(mesh, mesh.tets()[t]);
        CHECK(vol == doctest::Approx(1.0 / 48.0).epsilon(1e-13));
        CHECK(mesh.tet_volume(t) == doctest::Approx(vol).epsilon(1e-13));
    }
}

TEST_CASE("rejects level zero") {
    CHECK_THROWS_AS(build_unit_cube_mesh(0), std::invalid_argument);
}

TEST_CASE("mesh validity invariants for every level 1..32") {
    for (int n = 1; n <= 32; ++n) {
        const Mesh mesh = build_unit_cube_mesh(n);
        CAPTURE(n);
        REQUIRE(mesh.num_vertices() == (n + 1) * (n + 1) * (n + 1));
        REQUIRE(mesh.num_tets() == 6 * n * n * n);
        REQUIRE(static_cast<int>(mesh.boundary_faces().size()) == 12 * n * n);
        const int shell = (n + 1) * (n + 1) * (n + 1) - (n - 1) * (n - 1) * (n - 1);
        REQUIRE(mesh.num_boundary_nodes() == shell);

        long double volume = 0.0L;
        double min_volume = 1.0;
        for (std::size_t t = 0; t < static_cast<std::size_t>(mesh.num_tets()); ++t) {
            min_volume = std::min(min_volume, mesh.tet_volume(t));
            volume += mesh.tet_volume(t);
        }
        REQUIRE(min_volume > 0.0);
        REQUIRE(static_cast<double>(volume) == doctest::Approx(1.0).epsilon(1e-12));

        long double area = 0.0L;
        for (const auto& face : mesh.boundary_faces())
            area += face.area;
        REQUIRE(static_cast<double>(area) == doctest::Approx(6.0).epsilon(1e-12));

        // Face-counting topology: boundary faces in exactly one tet, interior
        // faces in exactly two.
        std::vector<std::array<int, 3>> keys;
        keys.reserve(static_cast<std::size_t>(mesh.num_tets()) * 4);
        constexpr int local[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
        for (const auto& tet : mesh.tets())
            for (const auto& f : local) {
                std::array<int, 3> key = {tet[static_cast<std::size_t>(f[0])],
                                          tet[static_cast<std::size_t>(f[1])],
                                          tet[static_cast<std::size_t>(f[2])]};
                std::sort(key.begin(), key.end());
                keys.push_back(key);
            }
        std::sort(keys.begin(), keys.end());
        std::set<std::array<int, 3>> boundary_keys;
        for (const auto& face : mesh.boundary_faces()) {
            std::array<int, 3> key = face.nodes;
            std::sort(key.begin(), key.end());
            boundary_keys.insert(key);
        }
        REQUIRE(boundary_keys.size() == mesh.boundary_faces().size());
        bool topology_ok = true;
        for (std::size_t k = 0; k < keys.size();) {
            std::size_t run = k;
            while (run < keys.size() && keys[run] == keys[k])
                ++run;
            const std::size_t multiplicity = run - k;
            const bool on_boundary = boundary_keys.count(keys[k]) > 0;
            if (multiplicity != (on_boundary ? 1u : 2u))
                topology_ok = false;
            k = run;
        }
        REQUIRE(topology_ok);

        // A vertex is a boundary node iff some coordinate is 0 or 1.
        bool classification_ok = true;
        for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v) {
            const Vector3& x = mesh.vertices()[static_cast<std::size_t>(v)];
            const bool on_boundary = x.minCoeff() == 0.0 || x.maxCoeff() == 1.0;
            if ((mesh.boundary_slot(static_cast<int>(v)) >= 0) != on_boundary)
                classification_ok = false;
        }
        REQUIRE(classification_ok);
        REQUIRE(std::is_sorted(mesh.boundary_nodes().begin(), mesh.boundary_nodes().end()));
    }
}

TEST_CASE("refinement nesting: level-n vertices appear in level-2n") {
    for (int n : {1, 2, 3}) {
        const Mesh coarse = build_unit_cube_mesh(n);
        const Mesh fine = build_unit_cube_mesh(2 * n);
        std::set<std::array<double, 3>> fine_vertices;
        for (const Vector3& x : fine.vertices())
            fine_vertices.insert({x[0], x[1], x[2]});
        for (const Vector3& x : coarse.vertices())
            CHECK(fine_vertices.count({x[0], x[1], x[2]}) == 1);
    }
}

TEST_CASE("boundary weights on level 1 follow the Kuhn split and sum to 6") {
    const Mesh mesh = build_unit_cube_mesh(1);
    const BoundaryField w = boundary_area_weights(mesh);

    // The split is not corner-symmetric: the two corners on the cell's main
    // diagonal sit on the face diagonal of all three incident faces (six
    // triangles, weight 1), the other six corners touch four (weight 2/3).
    int heavy = 0, light = 0;
    for (Eigen::Index s = 0; s < w.size(); ++s) {
        if (w[s] == doctest::Approx(1.0).epsilon(1e-14))
            ++heavy;
        else if (w[s] == doctest::Approx(2.0 / 3.0).epsilon(1e-14))
            ++light;
    }
    CHECK(heavy == 2);
    CHECK(light == 6);
    CHECK(w.values.sum() == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(w.values.mean() == doctest::Approx(0.75).epsilon(1e-14));

    for (int n : {1, 2, 3, 5, 8}) {
        const BoundaryField weights = boundary_area_weights(build_unit_cube_mesh(n));
        CHECK(weights.values.sum() == doctest::Approx(6.0).epsilon(1e-12));
    }
}

TEST_CASE("boundary weights match triangle-by-triangle accumulation on level 2") {
    const Mesh mesh = build_unit_cube_mesh(2);
    const BoundaryField w = boundary_area_weights(mesh);

    // Brute-force oracle: accumulate exact triangle areas per vertex.
    Eigen::VectorXd oracle = Eigen::VectorXd::Zero(mesh.num_boundary_nodes());
    for (const auto& face : mesh.boundary_faces()) {
        const Vector3& a = mesh.vertices()[static_cast<std::size_t>(face.nodes[0])];
        const Vector3& b = mesh.vertices()[static_cast<std::size_t>(face.nodes[1])];
        const Vector3& c = mesh.vertices()[static_cast<std::size_t>(face.nodes[2])];
        const double area = 0.5 * (b - a).cross(c - a).norm();
        for (int node : face.nodes)
            oracle[mesh.boundary_slot(node)] += area / 3.0;
    }
    for (Eigen::Index s = 0; s < w.size(); ++s)
        CHECK(w[s] == doctest::Approx(oracle[s]).epsilon(1e-14));

    // A face-center node (e.g. (0.5, 0.5, 0)) is shared by the triangles of
    // the four surrounding squares on that face.
    for (Eigen::Index s = 0; s < w.size(); ++s) {
        const Vector3& x = mesh.vertices()[static_cast<std::size_t>(mesh.boundary_nodes()[static_cast<std::size_t>(s)])];
        if (x[0] == 0.5 && x[1] == 0.5 && x[2] == 0.0)
            CHECK(w[s] == doctest::Approx(oracle[s]).epsilon(1e-15));
    }
}
