#pragma once

#include <array>
#include <vector>

#include "vesicle/mesh.hpp"
#include "vesicle/vec3.hpp"

namespace vesicle {

/// Per-triangle primitives: area, outward unit normal, interior angles and
/// their cotangents (angle c is at triangle corner c).
struct TrianglePrim {
    double area = 0.0;
    Vec3 unit_normal;
    std::array<double, 3> angle{};
    std::array<double, 3> cot{};
};

/// Per-edge primitives: length and the signed angle between the two face
/// normals; positive where the surface is locally convex.
struct EdgePrim {
    double length = 0.0;
    double theta = 0.0;
};

/// Cotangents are clamped to this magnitude near degenerate angles.
inline constexpr double kCotClamp = 1e8;

struct GeometryDiagnostics {
    int cot_clamps = 0;
    int nonpositive_voronoi_areas = 0;
};

std::vector<TrianglePrim> triangle_prims(const TriMesh& mesh, GeometryDiagnostics* diag = nullptr);
std::vector<EdgePrim> edge_prims(const TriMesh& mesh, const std::vector<TrianglePrim>& prims);

// --- primitive analytic gradients -----------------------------------------
// Each returns gradients with respect to the element's own vertices; a vertex
// not in the element has zero gradient.

/// d|x_j - x_i| for edge e: gradient w.r.t. (i, j).
std::array<Vec3, 2> d_length(const TriMesh& mesh, int edge_id);

/// dA^t for triangle t: gradient w.r.t. its three vertices.
std::array<Vec3, 3> d_tri_area(const TriMesh& mesh, int tri_id);

/// d theta_e for edge e: gradient w.r.t. (i, j, k, l).
std::array<Vec3, 4> d_dihedral(const TriMesh& mesh, int edge_id);

/// d V^t of the origin tetrahedron over triangle t: gradient w.r.t. (i, j, k).
std::array<Vec3, 3> d_tet_volume(const TriMesh& mesh, int tri_id);

// --- vertex quantities -----------------------------------------------------

/// A_i = (1/3) sum of incident triangle areas.
std::vector<double> vertex_area_barycentric(const TriMesh& mesh, const std::vector<TrianglePrim>& prims);

/// A_i = (1/8) sum over incident edges of (cot phi_k + cot phi_l) l_e^2.
/// May be non-positive at vertices surrounded by obtuse triangles.
std::vector<double> vertex_area_voronoi(const TriMesh& mesh, const std::vector<TrianglePrim>& prims,
                                        GeometryDiagnostics* diag = nullptr);

/// Voronoi for non-obtuse triangles; an obtuse triangle contributes A/2 to
/// its obtuse corner and A/4 to the other two.
std::vector<double> vertex_area_mixed(const TriMesh& mesh, const std::vector<TrianglePrim>& prims);

/// Inward unit normal: negated angle-weighted average of outward face
/// normals, so mean curvature is positive on a sphere.
std::vector<Vec3> vertex_normal_angle_weighted(const TriMesh& mesh, const std::vector<TrianglePrim>& prims);

double total_area(const TriMesh& mesh);
double total_volume(const TriMesh& mesh);

}  // namespace vesicle
