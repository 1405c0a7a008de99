#include "vesicle/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "vesicle/quadrature.hpp"

namespace vesicle {

namespace {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 0.5 * norm(cross(b - a, c - a));
}

double corner_angle(const Vec3& apex, const Vec3& p, const Vec3& q) {
    const Vec3 u = p - apex, v = q - apex;
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

}  // namespace

TriMesh make_mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles) {
    TriMesh mesh;
    mesh.vertices = std::move(vertices);
    mesh.triangles = std::move(triangles);

    const int nv = mesh.num_vertices();
    const int nt = mesh.num_triangles();
    for (const auto& tri : mesh.triangles) {
        for (int v : tri) {
            if (v < 0 || v >= nv) throw std::invalid_argument("make_mesh: vertex index out of range");
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw std::invalid_argument("make_mesh: triangle with repeated vertex");
        }
    }

    // Directed half-edge (i,j) -> (triangle, apex). Each must appear exactly once.
    std::map<std::pair<int, int>, std::pair<int, int>> half;
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        for (int c = 0; c < 3; ++c) {
            const int i = tri[c], j = tri[(c + 1) % 3], k = tri[(c + 2) % 3];
            auto [it, inserted] = half.emplace(std::make_pair(i, j), std::make_pair(t, k));
            if (!inserted) {
                std::ostringstream os;
                os << "make_mesh: duplicate directed edge (" << i << "," << j
                   << "); mesh is non-manifold or inconsistently oriented";
                throw std::invalid_argument(os.str());
            }
        }
    }

    mesh.edges.reserve(half.size() / 2);
    for (const auto& [de, tk] : half) {
        const auto [i, j] = de;
        if (i > j) continue;  // visit each undirected edge once
        auto rev = half.find({j, i});
        if (rev == half.end()) {
            std::ostringstream os;
            os << "make_mesh: boundary edge (" << i << "," << j << "); mesh is not closed";
            throw std::invalid_argument(os.str());
        }
        Edge e;
        e.i = i;
        e.j = j;
        e.t1 = tk.first;
        e.k = tk.second;
        e.t2 = rev->second.first;
        e.l = rev->second.second;
        mesh.edges.push_back(e);
    }

    mesh.vertex_edges.assign(nv, {});
    for (int e = 0; e < mesh.num_edges(); ++e) {
        mesh.vertex_edges[mesh.edges[e].i].push_back(e);
        mesh.vertex_edges[mesh.edges[e].j].push_back(e);
    }
    mesh.vertex_triangles.assign(nv, {});
    for (int t = 0; t < nt; ++t) {
        for (int v : mesh.triangles[t]) mesh.vertex_triangles[v].push_back(t);
    }
    return mesh;
}

ShapeKind parse_shape_kind(const std::string& name) {
    if (name == "sphere") return ShapeKind::Sphere;
    if (name == "prolate") return ShapeKind::ProlateEllipsoid;
    if (name == "oblate") return ShapeKind::OblateEllipsoid;
    if (name == "biconcave") return ShapeKind::BiconcaveOblate;
    throw std::invalid_argument("unknown shape: " + name);
}

TriMesh build_icosphere(int subdivision_level, double R) {
    if (subdivision_level < 0) throw std::invalid_argument("build_icosphere: level must be >= 0");
    if (R <= 0.0) throw std::invalid_argument("build_icosphere: radius must be positive");

    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
        {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},  {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

    for (int level = 0; level < subdivision_level; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            verts.push_back(0.5 * (verts[a] + verts[b]));
            int id = static_cast<int>(verts.size()) - 1;
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    for (auto& v : verts) v = (R / norm(v)) * v;
    return make_mesh(std::move(verts), std::move(faces));
}

TriMesh loop_subdivide(const TriMesh& mesh) {
    const int nv = mesh.num_vertices();
    std::vector<Vec3> verts(nv + mesh.num_edges());

    // Even (old) vertices: (1 - n*beta)*v + beta * sum of neighbors.
    std::vector<Vec3> ring_sum(nv, Vec3{});
    std::vector<int> degree(nv, 0);
    for (const Edge& e : mesh.edges) {
        ring_sum[e.i] += mesh.vertices[e.j];
        ring_sum[e.j] += mesh.vertices[e.i];
        ++degree[e.i];
        ++degree[e.j];
    }
    for (int v = 0; v < nv; ++v) {
        const int n = degree[v];
        const double c = 3.0 / 8.0 + 0.25 * std::cos(2.0 * std::numbers::pi / n);
        const double beta = (5.0 / 8.0 - c * c) / n;
        verts[v] = (1.0 - n * beta) * mesh.vertices[v] + beta * ring_sum[v];
    }

    // Odd (edge) vertices: 3/8 endpoints + 1/8 wings.
    std::map<std::pair<int, int>, int> edge_vertex;
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edges[e];
        verts[nv + e] = 0.375 * (mesh.vertices[ed.i] + mesh.vertices[ed.j]) +
                        0.125 * (mesh.vertices[ed.k] + mesh.vertices[ed.l]);
        edge_vertex.emplace(std::minmax(ed.i, ed.j), nv + e);
    }

    std::vector<std::array<int, 3>> faces;
    faces.reserve(mesh.num_triangles() * 4);
    for (const auto& f : mesh.triangles) {
        const int ab = edge_vertex.at(std::minmax(f[0], f[1]));
        const int bc = edge_vertex.at(std::minmax(f[1], f[2]));
        const int ca = edge_vertex.at(std::minmax(f[2], f[0]));
        faces.push_back({f[0], ab, ca});
        faces.push_back({f[1], bc, ab});
        faces.push_back({f[2], ca, bc});
        faces.push_back({ab, bc, ca});
    }
    return make_mesh(std::move(verts), std::move(faces));
}

namespace {

// Surface area of the axisymmetric ellipsoid (a, a, c) by Gauss-Legendre
// quadrature of the profile (rho, z) = (a sin u, c cos u).
double ellipsoid_area(double a, double c) {
    static const QuadRule rule = gauss_legendre(128, 0.0, std::numbers::pi);
    double area = 0.0;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double u = rule.nodes[q];
        const double s = std::sin(u), co = std::cos(u);
        area += rule.weights[q] * a * s * std::sqrt(a * a * co * co + c * c * s * s);
    }
    return 2.0 * std::numbers::pi * area;
}

// Reduced volume of the (a, a, qa) ellipsoid scaled to area 4*pi*R^2
// depends on the axis ratio q only.
double ellipsoid_reduced_volume(double q) {
    const double area_unit = ellipsoid_area(1.0, q);
    return q * std::pow(4.0 * std::numbers::pi / area_unit, 1.5);
}

// Solves reduced_volume(q) = v on a monotone bracket by bisection.
double solve_axis_ratio(double v, bool prolate) {
    double lo, hi;
    if (prolate) {
        lo = 1.0;
        hi = 2.0;
        while (ellipsoid_reduced_volume(hi) > v) hi *= 2.0;  // v decreases with q > 1
    } else {
        lo = 1e-6;
        hi = 1.0;
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double vm = ellipsoid_reduced_volume(mid);
        if (std::abs(vm - v) < 1e-10) return mid;
        // v decreases with q on the prolate branch, increases on the oblate one.
        if ((vm > v) == prolate) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double q = 0.5 * (lo + hi);
    if (std::abs(ellipsoid_reduced_volume(q) - v) > 1e-8) {
        throw std::runtime_error("map_to_shape: axis-ratio bisection failed to converge");
    }
    return q;
}

}  // namespace

TriMesh map_to_shape(const TriMesh& mesh, const ShapeSpec& spec) {
    const double R = spec.radius;
    if (R <= 0.0) throw std::invalid_argument("map_to_shape: radius must be positive");

    TriMesh out = mesh;
    switch (spec.kind) {
        case ShapeKind::Sphere: {
            for (auto& p : out.vertices) p = (R / norm(p)) * p;
            break;
        }
        case ShapeKind::ProlateEllipsoid:
        case ShapeKind::OblateEllipsoid: {
            const double v = spec.reduced_volume;
            if (v >= 1.0) throw std::invalid_argument("map_to_shape: ellipsoid needs reduced volume < 1");
            if (v < 0.05) throw std::invalid_argument("map_to_shape: reduced volume below floor 0.05");
            const bool prolate = spec.kind == ShapeKind::ProlateEllipsoid;
            const double q = solve_axis_ratio(v, prolate);
            const double a = R * std::sqrt(4.0 * std::numbers::pi / ellipsoid_area(1.0, q));
            const double c = q * a;
            for (auto& p : out.vertices) {
                const Vec3 unit = p / norm(p);
                p = {a * unit.x, a * unit.y, c * unit.z};
            }
            break;
        }
        case ShapeKind::BiconcaveOblate: {
            for (auto& p : out.vertices) {
                const Vec3 unit = (R / norm(p)) * p;
                const double rho2 = (unit.x * unit.x + unit.y * unit.y) / (R * R);
                const double w = std::sqrt(std::max(0.0, 1.0 - rho2));
                const double prof =
                    0.5 * R * w * (kBiconcaveC0 + kBiconcaveC1 * rho2 + kBiconcaveC2 * rho2 * rho2);
                p = {unit.x, unit.y, unit.z >= 0.0 ? prof : -prof};
            }
            break;
        }
    }
    return out;
}

EquiangulateResult equiangulate(const TriMesh& mesh, int max_passes) {
    EquiangulateResult result;
    std::vector<Vec3> verts = mesh.vertices;
    std::vector<std::array<int, 3>> faces = mesh.triangles;
    result.mesh = mesh;

    const double area_floor = 1e-12 * [&] {
        double total = 0.0;
        for (const auto& f : faces) total += triangle_area(verts[f[0]], verts[f[1]], verts[f[2]]);
        return total / faces.size();
    }();

    for (int pass = 0; pass < max_passes; ++pass) {
        const TriMesh& cur = result.mesh;
        std::vector<bool> dirty(cur.num_triangles(), false);
        // Undirected edge set for duplicate-edge rejection, kept current within the pass.
        std::map<std::pair<int, int>, int> edge_count;
        for (const Edge& e : cur.edges) edge_count[std::minmax(e.i, e.j)] = 1;

        int flips_this_pass = 0;
        for (const Edge& e : cur.edges) {
            if (dirty[e.t1] || dirty[e.t2]) continue;
            const Vec3 &xi = verts[e.i], &xj = verts[e.j], &xk = verts[e.k], &xl = verts[e.l];
            const double phi_k = corner_angle(xk, xi, xj);
            const double phi_l = corner_angle(xl, xj, xi);
            if (phi_k + phi_l <= std::numbers::pi + 1e-12) continue;
            if (edge_count.count(std::minmax(e.k, e.l))) continue;  // would duplicate an edge
            if (triangle_area(xi, xl, xk) < area_floor) continue;
            if (triangle_area(xl, xj, xk) < area_floor) continue;

            faces[e.t1] = {e.i, e.l, e.k};
            faces[e.t2] = {e.l, e.j, e.k};
            dirty[e.t1] = dirty[e.t2] = true;
            edge_count.erase(std::minmax(e.i, e.j));
            edge_count[std::minmax(e.k, e.l)] = 1;
            ++flips_this_pass;
        }

        if (flips_this_pass == 0) break;
        result.flips += flips_this_pass;
        ++result.passes;
        result.mesh = make_mesh(verts, faces);
    }
    return result;
}

MeshDiagnostics validate(const TriMesh& mesh, double degenerate_area_rel_floor) {
    MeshDiagnostics d;
    d.euler_characteristic = mesh.euler_characteristic();

    std::map<std::pair<int, int>, int> directed;
    for (const auto& tri : mesh.triangles) {
        for (int c = 0; c < 3; ++c) {
            ++directed[{tri[c], tri[(c + 1) % 3]}];
        }
    }
    std::map<std::pair<int, int>, int> undirected;
    for (const auto& [de, count] : directed) {
        if (count > 1) d.duplicate_directed_edges += count - 1;
        undirected[std::minmax(de.first, de.second)] += count;
    }
    d.oriented = d.duplicate_directed_edges == 0;
    for (const auto& [ue, count] : undirected) {
        if (count != 2) ++d.boundary_edges;
        // Orientation also requires both directions present.
        if (count == 2 && (!directed.count({ue.first, ue.second}) || !directed.count({ue.second, ue.first}))) {
            d.oriented = false;
        }
    }
    d.closed = d.boundary_edges == 0;

    d.min_triangle_area = std::numeric_limits<double>::infinity();
    d.min_angle = std::numeric_limits<double>::infinity();
    double total_area = 0.0;
    for (const auto& tri : mesh.triangles) {
        const Vec3 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
        const double area = triangle_area(a, b, c);
        total_area += area;
        d.min_triangle_area = std::min(d.min_triangle_area, area);
        d.max_triangle_area = std::max(d.max_triangle_area, area);
        for (const auto& [apex, p, q] :
             {std::tuple{a, b, c}, std::tuple{b, c, a}, std::tuple{c, a, b}}) {
            const double ang = corner_angle(apex, p, q);
            d.min_angle = std::min(d.min_angle, ang);
            d.max_angle = std::max(d.max_angle, ang);
        }
    }
    const double floor = degenerate_area_rel_floor * total_area / std::max(1, mesh.num_triangles());
    for (const auto& tri : mesh.triangles) {
        if (triangle_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]) <= floor) {
            ++d.degenerate_triangles;
        }
    }
    return d;
}

std::string MeshDiagnostics::summary() const {
    std::ostringstream os;
    os << (ok() ? "OK" : "INVALID") << ": closed=" << (closed ? "yes" : "no")
       << " oriented=" << (oriented ? "yes" : "no") << " chi=" << euler_characteristic
       << " boundary_edges=" << boundary_edges << " duplicate_directed_edges=" << duplicate_directed_edges
       << " degenerate_triangles=" << degenerate_triangles << " min_area=" << min_triangle_area
       << " max_area=" << max_triangle_area << " min_angle=" << min_angle << " max_angle=" << max_angle;
    return os.str();
}

double mean_edge_length(const TriMesh& mesh) {
    double total = 0.0;
    for (const Edge& e : mesh.edges) total += norm(mesh.vertices[e.j] - mesh.vertices[e.i]);
    return total / mesh.num_edges();
}

}  // namespace vesicle
