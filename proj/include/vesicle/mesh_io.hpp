#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "vesicle/mesh.hpp"

namespace vesicle {

/// Parse failure with the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class MeshFormat { Off, Obj };

/// Picks the format from the file extension (.off / .obj).
MeshFormat format_from_path(const std::string& path);

/// Reads a triangle-only OFF or OBJ file and validates manifoldness.
TriMesh read_mesh(const std::string& path);
TriMesh read_mesh(std::istream& in, MeshFormat format);

/// Writes coordinates with 17 significant digits so a round trip is exact.
void write_mesh(const TriMesh& mesh, const std::string& path);
void write_mesh(const TriMesh& mesh, std::ostream& out, MeshFormat format);

}  // namespace vesicle
