#pragma once

#include <array>
#include <functional>
#include <memory>

#include "vesicle/mesh.hpp"
#include "vesicle/models.hpp"
#include "vesicle/quadrature.hpp"
#include "vesicle/schemes.hpp"

namespace vesicle {

/// Axisymmetric surface of revolution x(u1,u2) =
/// (rho(u1) cos u2, rho(u1) sin u2, z(u1)) over [0,pi] x [0,2pi), with
/// closed-form profile derivatives up to fourth order. Curvatures follow
/// the positive-H-on-a-sphere convention.
class ParametricSurface {
public:
    virtual ~ParametricSurface() = default;

    /// rho, z and their first four u-derivatives.
    virtual void profile(double u, std::array<double, 5>& rho, std::array<double, 5>& z) const = 0;

    Vec3 position(double u1, double u2) const;
    Vec3 d1(double u1, double u2) const;  // d x / d u1
    Vec3 d2(double u1, double u2) const;  // d x / d u2
    Vec3 d11(double u1, double u2) const;
    Vec3 d12(double u1, double u2) const;
    Vec3 d22(double u1, double u2) const;

    /// Covariant metric (g11, g12, g22) and its determinant.
    std::array<double, 4> metric(double u1, double u2) const;
    /// Inward unit normal (sphere convention).
    Vec3 normal(double u1, double u2) const;

    double sqrt_g(double u1) const;  // area element per du1 du2
    double mean_curvature(double u1) const;
    double gaussian_curvature(double u1) const;
    /// Surface Laplacian of the mean curvature field.
    double laplace_mean_curvature(double u1) const;
    /// First u-derivative of H; exposed for cross-checks.
    double mean_curvature_deriv(double u1) const;
};

std::unique_ptr<ParametricSurface> make_sphere_surface(double radius);
std::unique_ptr<ParametricSurface> make_ellipsoid_surface(double a, double c);
/// Evans biconcave profile with the coefficients used by map_to_shape.
std::unique_ptr<ParametricSurface> make_biconcave_surface(double radius);
std::unique_ptr<ParametricSurface> make_surface(const ShapeSpec& spec);

/// Gauss-Legendre in u1 crossed with periodic trapezoid in u2.
struct QuadratureSpec {
    int nodes_u1 = 64;
    int nodes_u2 = 16;
};

struct ParametricMoments {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double volume = 0.0;
    double delta_a(double thickness) const { return 2.0 * thickness * m1; }
};

ParametricMoments parametric_moments(const ParametricSurface& surface, const QuadratureSpec& quad);

/// Moments with a node-doubling Richardson check; throws if the relative
/// change exceeds the tolerance.
ParametricMoments parametric_moments_checked(const ParametricSurface& surface, const QuadratureSpec& quad,
                                             double rel_tol = 1e-10);

EnergyBreakdown parametric_energy(const ParametricSurface& surface, const ModelParams& model,
                                  const QuadratureSpec& quad);

/// Normal force density at u1 (axisymmetric) from the moment variation;
/// positive values act along the inward normal.
double parametric_force_density(const ParametricSurface& surface, const ModelParams& model,
                                const ParametricMoments& moments, double u1);

/// Central finite differences of an arbitrary mesh energy; returns -dE/dx.
ForceField fd_gradient(const std::function<double(const TriMesh&)>& energy, const TriMesh& mesh,
                       double step = 1e-6);

/// ||a - b|| / max(||a||, ||b||, eps) over whole force fields.
double force_relative_error(const ForceField& a, const ForceField& b, double eps = 1e-300);

}  // namespace vesicle
