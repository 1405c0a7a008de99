#include "vesicle/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vesicle {

namespace {

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

double clamped_cot(double cos_a, double sin_cross_norm, GeometryDiagnostics* diag) {
    // cot = (u.v)/|u x v| for the two edge vectors at the corner.
    if (sin_cross_norm <= std::abs(cos_a) / kCotClamp) {
        if (diag) ++diag->cot_clamps;
        return std::copysign(kCotClamp, cos_a);
    }
    return cos_a / sin_cross_norm;
}

}  // namespace

std::vector<TrianglePrim> triangle_prims(const TriMesh& mesh, GeometryDiagnostics* diag) {
    std::vector<TrianglePrim> prims(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec3 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
        const Vec3 n = cross(b - a, c - a);
        const double n2 = norm(n);
        if (n2 <= 0.0 || !std::isfinite(n2)) {
            std::ostringstream os;
            os << "degenerate triangle " << t << " (" << tri[0] << "," << tri[1] << "," << tri[2] << ")";
            throw std::runtime_error(os.str());
        }
        TrianglePrim& p = prims[t];
        p.area = 0.5 * n2;
        p.unit_normal = n / n2;
        const Vec3 corners[3] = {a, b, c};
        for (int cidx = 0; cidx < 3; ++cidx) {
            const Vec3 u = corners[(cidx + 1) % 3] - corners[cidx];
            const Vec3 v = corners[(cidx + 2) % 3] - corners[cidx];
            const double d = dot(u, v);
            const double x = norm(cross(u, v));
            p.angle[cidx] = std::atan2(x, d);
            p.cot[cidx] = clamped_cot(d, x, diag);
        }
    }
    return prims;
}

std::vector<EdgePrim> edge_prims(const TriMesh& mesh, const std::vector<TrianglePrim>& prims) {
    std::vector<EdgePrim> out(mesh.num_edges());
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edges[e];
        const Vec3 d = mesh.vertices[ed.j] - mesh.vertices[ed.i];
        const double len = norm(d);
        if (len <= 0.0) throw std::runtime_error("zero-length edge " + std::to_string(e));
        const Vec3 ehat = d / len;
        const Vec3 &u1 = prims[ed.t1].unit_normal, &u2 = prims[ed.t2].unit_normal;
        out[e].length = len;
        out[e].theta = std::atan2(dot(cross(u1, u2), ehat), clamp_unit(dot(u1, u2)));
    }
    return out;
}

std::array<Vec3, 2> d_length(const TriMesh& mesh, int edge_id) {
    const Edge& e = mesh.edges[edge_id];
    const Vec3 d = mesh.vertices[e.j] - mesh.vertices[e.i];
    const double len = norm(d);
    if (len <= 0.0) throw std::runtime_error("zero-length edge");
    const Vec3 ehat = d / len;
    return {-ehat, ehat};
}

std::array<Vec3, 3> d_tri_area(const TriMesh& mesh, int tri_id) {
    const auto& tri = mesh.triangles[tri_id];
    const Vec3 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
    const Vec3 n = cross(b - a, c - a);
    const double n2 = norm(n);
    if (n2 <= 0.0) throw std::runtime_error("degenerate triangle in d_tri_area");
    const Vec3 u = n / n2;
    return {0.5 * cross(u, c - b), 0.5 * cross(u, a - c), 0.5 * cross(u, b - a)};
}

std::array<Vec3, 4> d_dihedral(const TriMesh& mesh, int edge_id) {
    const Edge& e = mesh.edges[edge_id];
    const Vec3 &xi = mesh.vertices[e.i], &xj = mesh.vertices[e.j];
    const Vec3 &xk = mesh.vertices[e.k], &xl = mesh.vertices[e.l];

    const Vec3 d = xj - xi;
    const double len = norm(d);
    const Vec3 ehat = d / len;

    const Vec3 n1 = cross(xj - xi, xk - xi);  // t1 = <i,j,k>
    const Vec3 n2 = cross(xi - xj, xl - xj);  // t2 = <j,i,l>
    const double a1 = norm(n1), a2 = norm(n2);
    if (a1 <= 0.0 || a2 <= 0.0) throw std::runtime_error("degenerate wing triangle in d_dihedral");
    const Vec3 u1 = n1 / a1, u2 = n2 / a2;

    const Vec3 gk = (-len / a1) * u1;
    const Vec3 gl = (-len / a2) * u2;
    const Vec3 gj = (dot(xk - xi, ehat) / a1) * u1 + (dot(xl - xi, ehat) / a2) * u2;
    const Vec3 gi = (-dot(xk - xj, ehat) / a1) * u1 - (dot(xl - xj, ehat) / a2) * u2;
    return {gi, gj, gk, gl};
}

std::array<Vec3, 3> d_tet_volume(const TriMesh& mesh, int tri_id) {
    const auto& tri = mesh.triangles[tri_id];
    const Vec3 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
    return {cross(b, c) / 6.0, cross(c, a) / 6.0, cross(a, b) / 6.0};
}

std::vector<double> vertex_area_barycentric(const TriMesh& mesh, const std::vector<TrianglePrim>& prims) {
    std::vector<double> area(mesh.num_vertices(), 0.0);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const double third = prims[t].area / 3.0;
        for (int v : mesh.triangles[t]) area[v] += third;
    }
    return area;
}

std::vector<double> vertex_area_voronoi(const TriMesh& mesh, const std::vector<TrianglePrim>& prims,
                                        GeometryDiagnostics* diag) {
    std::vector<double> area(mesh.num_vertices(), 0.0);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const TrianglePrim& p = prims[t];
        for (int c = 0; c < 3; ++c) {
            // Edge from corner c to corner c+1 is opposite corner c+2.
            const int ia = tri[c], ib = tri[(c + 1) % 3];
            const double l2 = norm2(mesh.vertices[ib] - mesh.vertices[ia]);
            const double w = 0.125 * p.cot[(c + 2) % 3] * l2;
            area[ia] += w;
            area[ib] += w;
        }
    }
    if (diag) {
        for (double a : area) {
            if (a <= 0.0) ++diag->nonpositive_voronoi_areas;
        }
    }
    return area;
}

std::vector<double> vertex_area_mixed(const TriMesh& mesh, const std::vector<TrianglePrim>& prims) {
    std::vector<double> area(mesh.num_vertices(), 0.0);
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const TrianglePrim& p = prims[t];
        int obtuse = -1;
        for (int c = 0; c < 3; ++c) {
            if (p.angle[c] > half_pi) obtuse = c;
        }
        if (obtuse < 0) {
            for (int c = 0; c < 3; ++c) {
                const int ia = tri[c], ib = tri[(c + 1) % 3];
                const double l2 = norm2(mesh.vertices[ib] - mesh.vertices[ia]);
                const double w = 0.125 * p.cot[(c + 2) % 3] * l2;
                area[ia] += w;
                area[ib] += w;
            }
        } else {
            for (int c = 0; c < 3; ++c) {
                area[tri[c]] += (c == obtuse ? 0.5 : 0.25) * p.area;
            }
        }
    }
    return area;
}

std::vector<Vec3> vertex_normal_angle_weighted(const TriMesh& mesh, const std::vector<TrianglePrim>& prims) {
    std::vector<Vec3> normal(mesh.num_vertices(), Vec3{});
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int c = 0; c < 3; ++c) {
            normal[tri[c]] += prims[t].angle[c] * prims[t].unit_normal;
        }
    }
    for (Vec3& n : normal) n = -normalized(n);  // inward
    return normal;
}

double total_area(const TriMesh& mesh) {
    double area = 0.0;
    for (const auto& tri : mesh.triangles) {
        area += 0.5 * norm(cross(mesh.vertices[tri[1]] - mesh.vertices[tri[0]],
                                 mesh.vertices[tri[2]] - mesh.vertices[tri[0]]));
    }
    return area;
}

double total_volume(const TriMesh& mesh) {
    double vol = 0.0;
    for (const auto& tri : mesh.triangles) {
        vol += dot(mesh.vertices[tri[0]], cross(mesh.vertices[tri[1]], mesh.vertices[tri[2]])) / 6.0;
    }
    return vol;
}

}  // namespace vesicle
