#pragma once

#include <string>
#include <vector>

#include "vesicle/geometry.hpp"
#include "vesicle/mesh.hpp"
#include "vesicle/vec3.hpp"

namespace vesicle {

/// The four bending discretizations. A is the dihedral-angle energy; B the
/// edge-based integrated mean curvature; C the cotangent Laplace-Beltrami
/// with Voronoi areas; D the mixed-area operator with variational forces.
enum class Scheme { A, B, C, D };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

/// Per-vertex curvature data produced by schemes B, C, D.
/// H is positive on a sphere; n (schemes C, D) is the inward unit normal;
/// G (scheme D) is the angle-defect Gaussian curvature.
struct VertexField {
    Scheme scheme = Scheme::B;
    std::vector<double> H;
    std::vector<double> A;
    std::vector<Vec3> n;
    std::vector<double> G;
    GeometryDiagnostics diagnostics;
};

/// Discrete moments of mean curvature: M0 = sum A_i, M1 = sum H_i A_i,
/// M2 = sum H_i^2 A_i.
struct Moments {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};

Moments moments(const VertexField& field);

/// Partial derivatives of an energy E(M0, M1, M2) with respect to the
/// moments; the common currency between models and scheme forces.
struct MomentPartials {
    double dm0 = 0.0;
    double dm1 = 0.0;
    double dm2 = 0.0;
};

using ForceField = std::vector<Vec3>;

ForceField force_from_density(const ForceField& density, const std::vector<double>& vertex_area);
ForceField density_from_force(const ForceField& force, const std::vector<double>& vertex_area);

// --- scheme A ---------------------------------------------------------------

/// E = 2 kappa_tilde sum_e [1 - cos(theta_e - theta0)], or the small-angle
/// quadratic kappa_tilde sum_e (theta_e - theta0)^2 when linearized.
double scheme_a_energy(const TriMesh& mesh, double kappa_tilde, double theta0, bool linearized = false);

/// Exact negative gradient of the scheme A energy.
ForceField scheme_a_force(const TriMesh& mesh, double kappa_tilde, double theta0, bool linearized = false);

/// Per-vertex split of the scheme A energy (half of each edge term to each
/// endpoint); reporting only, forces do not depend on the split.
std::vector<double> scheme_a_vertex_energy(const TriMesh& mesh, double kappa_tilde, double theta0,
                                           bool linearized = false);

// --- schemes B, C, D: fields ------------------------------------------------

VertexField scheme_b_field(const TriMesh& mesh);
VertexField scheme_c_field(const TriMesh& mesh);
VertexField scheme_d_field(const TriMesh& mesh);
VertexField scheme_field(const TriMesh& mesh, Scheme scheme);

// --- schemes B, C: exact moment-energy gradients ----------------------------

/// Exact -dE/dx for any energy E(M0, M1, M2) under the scheme B field
/// definitions, given the partials at the current moments.
ForceField scheme_b_force(const TriMesh& mesh, const VertexField& field, const MomentPartials& partials);

/// Same contract for scheme C. Throws if any Voronoi area is non-positive
/// (the operator is not usable for forces at such vertices).
ForceField scheme_c_force(const TriMesh& mesh, const VertexField& field, const MomentPartials& partials);

// --- scheme D: variational force density ------------------------------------

/// Normal force density f_i = dm0*F0 + dm1*F1 + dm2*F2 with F0 = 2H,
/// F1 = G, F2 = -2H(H^2-G) - lap(H); the lap is the mixed-area operator
/// applied a second time to the discrete H. Not an exact gradient of the
/// discrete energy; the vector force f_i A_i n_i (inward n) is a descent
/// direction in the continuum limit only.
std::vector<double> scheme_d_force_density(const TriMesh& mesh, const VertexField& field,
                                           const MomentPartials& partials);

ForceField scheme_d_force(const TriMesh& mesh, const VertexField& field, const MomentPartials& partials);

/// Mixed-area cotangent Laplacian applied to a per-vertex scalar.
std::vector<double> laplace_beltrami(const TriMesh& mesh, const std::vector<double>& values,
                                     const std::vector<double>& vertex_area);

}  // namespace vesicle
