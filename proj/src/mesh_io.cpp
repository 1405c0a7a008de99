#include "vesicle/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "vesicle/vec3.hpp"

namespace vesicle {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

MeshFormat format_from_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".off" || ext == ".OFF") return MeshFormat::Off;
    if (ext == ".obj" || ext == ".OBJ") return MeshFormat::Obj;
    throw std::invalid_argument("unrecognized mesh extension: " + path);
}

namespace {

// Reads the next line that carries content, stripping comments ('#').
bool next_content_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
}

TriMesh read_off(std::istream& in) {
    int lineno = 0;
    std::string line;
    if (!next_content_line(in, line, lineno)) throw ParseError("empty OFF file", lineno);
    {
        std::istringstream ls(line);
        std::string magic;
        ls >> magic;
        if (magic != "OFF") throw ParseError("missing OFF header", lineno);
    }
    if (!next_content_line(in, line, lineno)) throw ParseError("missing OFF counts", lineno);
    long nv = 0, nt = 0, ne = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> nv >> nt >> ne)) throw ParseError("malformed OFF counts", lineno);
        if (nv < 0 || nt < 0) throw ParseError("negative OFF counts", lineno);
    }
    std::vector<Vec3> verts(nv);
    for (long v = 0; v < nv; ++v) {
        if (!next_content_line(in, line, lineno)) throw ParseError("unexpected end of vertex list", lineno);
        std::istringstream ls(line);
        if (!(ls >> verts[v].x >> verts[v].y >> verts[v].z)) {
            throw ParseError("malformed vertex line", lineno);
        }
    }
    std::vector<std::array<int, 3>> tris(nt);
    for (long t = 0; t < nt; ++t) {
        if (!next_content_line(in, line, lineno)) throw ParseError("unexpected end of face list", lineno);
        std::istringstream ls(line);
        int count = 0;
        if (!(ls >> count)) throw ParseError("malformed face line", lineno);
        if (count != 3) throw ParseError("triangles only", lineno);
        if (!(ls >> tris[t][0] >> tris[t][1] >> tris[t][2])) {
            throw ParseError("malformed face line", lineno);
        }
    }
    TriMesh mesh = make_mesh(std::move(verts), std::move(tris));
    if (ne != 0 && ne != mesh.num_edges()) {
        throw ParseError("OFF header edge count inconsistent with body", 2);
    }
    return mesh;
}

TriMesh read_obj(std::istream& in) {
    int lineno = 0;
    std::string line;
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> tris;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw ParseError("malformed vertex line", lineno);
            verts.push_back(p);
        } else if (tag == "f") {
            std::vector<long> ids;
            std::string tok;
            while (ls >> tok) {
                // Accept "v", "v/vt", "v/vt/vn", "v//vn"; only the vertex id matters.
                const auto slash = tok.find('/');
                try {
                    ids.push_back(std::stol(tok.substr(0, slash)));
                } catch (const std::exception&) {
                    throw ParseError("malformed face index", lineno);
                }
            }
            if (ids.size() != 3) throw ParseError("triangles only", lineno);
            std::array<int, 3> tri{};
            for (int c = 0; c < 3; ++c) {
                long id = ids[c];
                if (id < 0) id = static_cast<long>(verts.size()) + 1 + id;  // relative index
                if (id < 1 || id > static_cast<long>(verts.size())) {
                    throw ParseError("face index out of range", lineno);
                }
                tri[c] = static_cast<int>(id - 1);
            }
            tris.push_back(tri);
        }
        // Other tags (vn, vt, o, g, s, usemtl, ...) are ignored.
    }
    if (tris.empty()) throw ParseError("no faces found", lineno);
    return make_mesh(std::move(verts), std::move(tris));
}

}  // namespace

TriMesh read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return read_mesh(in, format_from_path(path));
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error(path + ": " + err.what());
    }
}

TriMesh read_mesh(std::istream& in, MeshFormat format) {
    return format == MeshFormat::Off ? read_off(in) : read_obj(in);
}

void write_mesh(const TriMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_mesh(mesh, out, format_from_path(path));
}

void write_mesh(const TriMesh& mesh, std::ostream& out, MeshFormat format) {
    out << std::setprecision(17);
    if (format == MeshFormat::Off) {
        out << "OFF\n" << mesh.num_vertices() << " " << mesh.num_triangles() << " " << mesh.num_edges()
            << "\n";
        for (const Vec3& p : mesh.vertices) out << p.x << " " << p.y << " " << p.z << "\n";
        for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    } else {
        for (const Vec3& p : mesh.vertices) out << "v " << p.x << " " << p.y << " " << p.z << "\n";
        for (const auto& t : mesh.triangles) {
            out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
        }
    }
    if (!out) throw std::runtime_error("mesh write failed");
}

}  // namespace vesicle
