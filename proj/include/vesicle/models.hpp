#pragma once

#include <string>
#include <vector>

#include "vesicle/mesh.hpp"
#include "vesicle/schemes.hpp"

namespace vesicle {

enum class ModelKind { Minimal, SpontaneousCurvature, BilayerCouple, AreaDifference };

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

/// The bilayer-couple constraint is realized as the large-alpha limit of
/// the area-difference elasticity; this multiplies the default alpha.
inline constexpr double kBilayerCoupleAlphaFactor = 1000.0;

/// Physical parameters, all dimensional. Helpers below fill them from the
/// usual nondimensional control parameters at a given sphere radius R.
struct ModelParams {
    ModelKind kind = ModelKind::Minimal;
    double kappa_b = 1.0;      // bending modulus (energy)
    double H0 = 0.0;           // half spontaneous curvature (1/length)
    double alpha = 0.0;        // ADE modulus ratio (dimensionless)
    double D = 1e-3;           // bilayer thickness (length)
    double dA0 = 0.0;          // reference area difference (length^2)
    double kappa_tilde = 0.0;  // scheme A modulus
    double theta0 = 0.0;       // scheme A spontaneous angle

    bool has_ade() const { return kind == ModelKind::BilayerCouple || kind == ModelKind::AreaDifference; }

    static ModelParams minimal(double kappa_b);
    /// h0 is the dimensionless spontaneous curvature (H0 = h0 / R).
    static ModelParams spontaneous(double kappa_b, double h0, double R);
    /// da0 is the reference area difference over the sphere value 4*pi*R*D.
    static ModelParams ade(double kappa_b, double alpha, double da0, double R, double thickness);
    static ModelParams bilayer_couple(double kappa_b, double alpha, double da0, double R,
                                      double thickness);
};

/// Penalty coefficients and targets for global area, per-triangle area and
/// enclosed volume. Zero coefficient disables a term.
struct ConstraintParams {
    double kappa_area_global = 0.0;
    double area_target = 0.0;
    double kappa_area_local = 0.0;
    std::vector<double> tri_area_targets;  // usually uniform area_target / N_t
    double kappa_volume = 0.0;
    double volume_target = 0.0;

    void set_uniform_local_targets(double total_area, int num_triangles);
};

struct EnergyBreakdown {
    double bending = 0.0;      // 2k(M2 - 2 H0 M1 + H0^2 M0)
    double ade = 0.0;          // (a pi k / 2 M0) (2 M1 - dA0/D)^2
    double area_global = 0.0;
    double area_local = 0.0;
    double volume = 0.0;
    double total = 0.0;
    // diagnostics of the evaluated state
    double area = 0.0;
    double enclosed_volume = 0.0;
    double reduced_volume = 0.0;
    double da = 0.0;        // Delta a  = dA / (4 pi R D)
    double da_prime = 0.0;  // Delta a' = dA / A
};

struct ReducedQuantities {
    double reduced_volume = 0.0;
    double da = 0.0;
    double da_prime = 0.0;
    double area = 0.0;
    double volume = 0.0;
    double radius = 0.0;  // sqrt(area / 4 pi) unless supplied
};

/// Bending + ADE energies from moments alone; shared by the discrete
/// schemes and the parametric oracle.
EnergyBreakdown energy_from_moments(const Moments& m, const ModelParams& model);

/// Partial derivatives of the bending + ADE energy with respect to the
/// moments, evaluated at the current moments.
MomentPartials moment_partials(const Moments& m, const ModelParams& model);

/// Full breakdown for a scheme B/C/D field, with constraint penalties
/// evaluated on the mesh. Scheme A fields are not accepted.
EnergyBreakdown total_energy(const TriMesh& mesh, const VertexField& field, const ModelParams& model,
                             const ConstraintParams& constraints);

/// Penalty energies alone (global area, local area, volume).
EnergyBreakdown penalty_energy(const TriMesh& mesh, const ConstraintParams& constraints);

/// Analytic penalty forces (exact negative gradient of penalty_energy).
ForceField penalty_force(const TriMesh& mesh, const ConstraintParams& constraints);

/// Scheme force plus penalties: exact -dE/dx for schemes A, B, C; the
/// variational density times vertex area for scheme D.
ForceField total_force(const TriMesh& mesh, const ModelParams& model, const ConstraintParams& constraints,
                       Scheme scheme);

ReducedQuantities reduced_quantities(const TriMesh& mesh, const VertexField& field, double thickness,
                                     double radius = 0.0);

}  // namespace vesicle
