#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vesicle/vec3.hpp"

namespace vesicle {

/// Edge record with wing vertices: edge <i,j> is shared by triangle
/// t1:<i,j,k> (contains the directed half-edge i->j) and t2:<j,i,l>.
struct Edge {
    int i = -1, j = -1;  // endpoints
    int k = -1, l = -1;  // apex of t1, apex of t2
    int t1 = -1, t2 = -1;
};

/// Closed oriented triangle mesh with precomputed edge/vertex adjacency.
/// Immutable after construction; mesh operations return new meshes.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;  // CCW seen from outside
    std::vector<Edge> edges;
    std::vector<std::vector<int>> vertex_edges;      // incident edge ids per vertex
    std::vector<std::vector<int>> vertex_triangles;  // incident triangle ids per vertex

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int euler_characteristic() const { return num_vertices() - num_edges() + num_triangles(); }
};

/// Builds adjacency from raw vertices and triangles. Throws if the surface
/// is not a closed, consistently oriented 2-manifold.
TriMesh make_mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

enum class ShapeKind { Sphere, ProlateEllipsoid, OblateEllipsoid, BiconcaveOblate };

struct ShapeSpec {
    ShapeKind kind = ShapeKind::Sphere;
    double reduced_volume = 1.0;  // ellipsoids only
    double radius = 1.0;
};

ShapeKind parse_shape_kind(const std::string& name);

// Evans biconcave profile z(rho) coefficients; reduced volume ~ 0.642.
inline constexpr double kBiconcaveC0 = 0.207161;
inline constexpr double kBiconcaveC1 = 2.002558;
inline constexpr double kBiconcaveC2 = -1.122762;

/// Icosahedron refined by midpoint subdivision with radial projection;
/// level L gives 20*4^L triangles, every vertex at distance R from origin.
TriMesh build_icosphere(int subdivision_level, double R = 1.0);

/// One round of Loop subdivision (standard vertex/edge masks); quadruples
/// the triangle count and preserves orientation.
TriMesh loop_subdivide(const TriMesh& mesh);

/// Maps an icosphere onto a target shape, preserving connectivity.
/// Ellipsoid axis ratio is solved by bisection so that the surface area is
/// 4*pi*R^2 and the reduced volume matches spec.reduced_volume.
TriMesh map_to_shape(const TriMesh& mesh, const ShapeSpec& spec);

struct EquiangulateResult {
    TriMesh mesh;
    int flips = 0;
    int passes = 0;
};

/// Delaunay-style edge flipping: an interior edge is flipped when the two
/// opposite angles sum to more than pi. Vertex positions are unchanged.
/// Flips that would create a degenerate or duplicate triangle are skipped.
EquiangulateResult equiangulate(const TriMesh& mesh, int max_passes = 50);

struct MeshDiagnostics {
    bool closed = false;              // every edge has exactly two incident triangles
    bool oriented = false;            // each edge seen once per direction
    int euler_characteristic = 0;
    int boundary_edges = 0;           // undirected edges with != 2 incident triangles
    int duplicate_directed_edges = 0;
    int degenerate_triangles = 0;     // area below the floor
    double min_triangle_area = 0.0;
    double max_triangle_area = 0.0;
    double min_angle = 0.0;           // radians
    double max_angle = 0.0;
    bool ok() const {
        return closed && oriented && euler_characteristic == 2 && degenerate_triangles == 0;
    }
    std::string summary() const;
};

/// Degenerate-area floor is relative to the mean triangle area.
MeshDiagnostics validate(const TriMesh& mesh, double degenerate_area_rel_floor = 1e-12);

/// Mean edge length; handy for time-step and tolerance scales.
double mean_edge_length(const TriMesh& mesh);

}  // namespace vesicle
