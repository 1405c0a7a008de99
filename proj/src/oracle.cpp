#include "vesicle/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vesicle {

namespace {

// f(u) = cos(u)^p * sum_k c_k sin(u)^k with p in {0,1}; closed under
// differentiation, which is how the profiles provide exact derivatives of
// any order.
struct TrigPoly {
    bool has_cos = false;
    std::vector<double> coeff;  // coeff[k] multiplies sin^k

    double eval(double u) const {
        const double s = std::sin(u);
        double acc = 0.0;
        for (size_t k = coeff.size(); k-- > 0;) acc = acc * s + coeff[k];
        return has_cos ? acc * std::cos(u) : acc;
    }

    TrigPoly derivative() const {
        TrigPoly d;
        d.has_cos = !has_cos;
        if (!has_cos) {
            // (c s^k)' = c k s^(k-1) cos
            if (coeff.size() > 1) d.coeff.assign(coeff.size() - 1, 0.0);
            for (size_t k = 1; k < coeff.size(); ++k) d.coeff[k - 1] += k * coeff[k];
        } else {
            // (c cos s^k)' = c k s^(k-1) - c (k+1) s^(k+1)
            d.coeff.assign(coeff.size() + 1, 0.0);
            for (size_t k = 0; k < coeff.size(); ++k) {
                if (k >= 1) d.coeff[k - 1] += coeff[k] * k;
                d.coeff[k + 1] -= coeff[k] * (k + 1);
            }
        }
        return d;
    }
};

// Profile with derivative chain precomputed once.
struct ProfileSurface : ParametricSurface {
    std::array<TrigPoly, 5> rho_d;
    std::array<TrigPoly, 5> z_d;

    ProfileSurface(TrigPoly rho, TrigPoly z) {
        rho_d[0] = std::move(rho);
        z_d[0] = std::move(z);
        for (int k = 1; k < 5; ++k) {
            rho_d[k] = rho_d[k - 1].derivative();
            z_d[k] = z_d[k - 1].derivative();
        }
    }

    void profile(double u, std::array<double, 5>& rho, std::array<double, 5>& z) const override {
        for (int k = 0; k < 5; ++k) {
            rho[k] = rho_d[k].eval(u);
            z[k] = z_d[k].eval(u);
        }
    }
};

struct Curvatures {
    double H, G, Hp, lapH;
};

// All per-u1 differential quantities of a surface of revolution. kappa_m is
// the meridional, kappa_c the circumferential principal curvature; the sign
// convention makes both 1/R on a sphere.
Curvatures curvature_chain(const ParametricSurface& surf, double u) {
    std::array<double, 5> r, z;
    surf.profile(u, r, z);

    const double w = r[1] * r[1] + z[1] * z[1];
    const double wp = 2.0 * (r[1] * r[2] + z[1] * z[2]);
    const double wpp = 2.0 * (r[2] * r[2] + r[1] * r[3] + z[2] * z[2] + z[1] * z[3]);

    const double m = r[2] * z[1] - z[2] * r[1];
    const double mp = r[3] * z[1] - z[3] * r[1];
    const double mpp = r[4] * z[1] + r[3] * z[2] - z[4] * r[1] - z[3] * r[2];

    const double iw = 1.0 / w;
    const double w12 = std::sqrt(w);
    const double w32 = w * w12;

    const double km = m / w32;
    const double kmp = mp / w32 - 1.5 * m * wp / (w32 * w);
    const double kmpp = mpp / w32 - 3.0 * mp * wp / (w32 * w) + 3.75 * m * wp * wp / (w32 * w * w) -
                        1.5 * m * wpp / (w32 * w);

    // kappa_c = -z' g with g = 1/(rho sqrt(w))
    const double g = 1.0 / (r[0] * w12);
    const double t1 = r[1] / r[0] + 0.5 * wp * iw;
    const double gp = -g * t1;
    const double t1p = r[2] / r[0] - r[1] * r[1] / (r[0] * r[0]) + 0.5 * wpp * iw - 0.5 * wp * wp * iw * iw;
    const double gpp = -gp * t1 - g * t1p;

    const double kc = -z[1] * g;
    const double kcp = -z[2] * g - z[1] * gp;
    const double kcpp = -z[3] * g - 2.0 * z[2] * gp - z[1] * gpp;

    Curvatures c;
    c.H = 0.5 * (km + kc);
    c.G = km * kc;
    c.Hp = 0.5 * (kmp + kcp);
    const double Hpp = 0.5 * (kmpp + kcpp);
    // axisymmetric Laplace-Beltrami: (1/(rho sqrt w)) d/du [rho H' / sqrt w]
    c.lapH = (r[1] * c.Hp + r[0] * Hpp - r[0] * c.Hp * 0.5 * wp * iw) / (r[0] * w);
    return c;
}

}  // namespace

Vec3 ParametricSurface::position(double u1, double u2) const {
    std::array<double, 5> r, z;
    profile(u1, r, z);
    return {r[0] * std::cos(u2), r[0] * std::sin(u2), z[0]};
}

Vec3 ParametricSurface::d1(double u1, double u2) const {
    std::array<double, 5> r, z;
    profile(u1, r, z);
    return {r[1] * std::cos(u2), r[1] * std::sin(u2), z[1]};
}

Vec3 ParametricSurface::d2(double u1, double u2) const {
    std::array<double, 5> r, z;
    profile(u1, r, z);
    return {-r[0] * std::sin(u2), r[0] * std::cos(u2), 0.0};
}

Vec3 ParametricSurface::d11(double u1, double u2) const {
    std::array<double, 5> r, z;
    profile(u1, r, z);
    return {r[2] * std::cos(u2), r[2] * std::sin(u2), z[2]};
}

Vec3 ParametricSurface::d12(double u1, double u2) const {
    std::array<double, 5> r, z;
    profile(u1, r, z);
    return {-r[1] * std::sin(u2), r[1] * std::cos(u2), 0.0};
}

Vec3 ParametricSurface::d22(double u1, double u2) const {
    std::array<double, 5> r, z;
    profile(u1, r, z);
    return {-r[0] * std::cos(u2), -r[0] * std::sin(u2), 0.0};
}

std::array<double, 4> ParametricSurface::metric(double u1, double u2) const {
    const Vec3 a = d1(u1, u2), b = d2(u1, u2);
    const double g11 = dot(a, a), g12 = dot(a, b), g22 = dot(b, b);
    return {g11, g12, g22, g11 * g22 - g12 * g12};
}

Vec3 ParametricSurface::normal(double u1, double u2) const {
    std::array<double, 5> r, z;
    profile(u1, r, z);
    // Inward normal is the profile-frame vector (z', -rho')/sqrt(w) rotated
    // around the axis: on a sphere it equals -x/R.
    const double w12 = std::sqrt(r[1] * r[1] + z[1] * z[1]);
    return {z[1] * std::cos(u2) / w12, z[1] * std::sin(u2) / w12, -r[1] / w12};
}

double ParametricSurface::sqrt_g(double u1) const {
    std::array<double, 5> r, z;
    profile(u1, r, z);
    return r[0] * std::sqrt(r[1] * r[1] + z[1] * z[1]);
}

double ParametricSurface::mean_curvature(double u1) const { return curvature_chain(*this, u1).H; }

double ParametricSurface::gaussian_curvature(double u1) const { return curvature_chain(*this, u1).G; }

double ParametricSurface::laplace_mean_curvature(double u1) const {
    return curvature_chain(*this, u1).lapH;
}

double ParametricSurface::mean_curvature_deriv(double u1) const { return curvature_chain(*this, u1).Hp; }

std::unique_ptr<ParametricSurface> make_sphere_surface(double radius) {
    TrigPoly rho{false, {0.0, radius}};
    TrigPoly z{true, {radius}};
    return std::make_unique<ProfileSurface>(std::move(rho), std::move(z));
}

std::unique_ptr<ParametricSurface> make_ellipsoid_surface(double a, double c) {
    TrigPoly rho{false, {0.0, a}};
    TrigPoly z{true, {c}};
    return std::make_unique<ProfileSurface>(std::move(rho), std::move(z));
}

std::unique_ptr<ParametricSurface> make_biconcave_surface(double radius) {
    TrigPoly rho{false, {0.0, radius}};
    TrigPoly z{true, {0.5 * radius * kBiconcaveC0, 0.0, 0.5 * radius * kBiconcaveC1, 0.0,
                      0.5 * radius * kBiconcaveC2}};
    return std::make_unique<ProfileSurface>(std::move(rho), std::move(z));
}

namespace {

// Reproduces the axis-ratio solve of map_to_shape so the oracle surface
// matches the generated meshes.
double ellipsoid_area_quad(double a, double c) {
    const QuadRule rule = gauss_legendre(128, 0.0, std::numbers::pi);
    double area = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = std::sin(rule.nodes[i]), co = std::cos(rule.nodes[i]);
        area += rule.weights[i] * a * s * std::sqrt(a * a * co * co + c * c * s * s);
    }
    return 2.0 * std::numbers::pi * area;
}

}  // namespace

std::unique_ptr<ParametricSurface> make_surface(const ShapeSpec& spec) {
    switch (spec.kind) {
        case ShapeKind::Sphere: return make_sphere_surface(spec.radius);
        case ShapeKind::BiconcaveOblate: return make_biconcave_surface(spec.radius);
        case ShapeKind::ProlateEllipsoid:
        case ShapeKind::OblateEllipsoid: {
            const bool prolate = spec.kind == ShapeKind::ProlateEllipsoid;
            double lo = prolate ? 1.0 : 1e-6, hi = prolate ? 2.0 : 1.0;
            auto reduced = [&](double q) {
                return q * std::pow(4.0 * std::numbers::pi / ellipsoid_area_quad(1.0, q), 1.5);
            };
            if (prolate) {
                while (reduced(hi) > spec.reduced_volume) hi *= 2.0;
            }
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((reduced(mid) > spec.reduced_volume) == prolate) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double q = 0.5 * (lo + hi);
            const double a = spec.radius * std::sqrt(4.0 * std::numbers::pi / ellipsoid_area_quad(1.0, q));
            return make_ellipsoid_surface(a, q * a);
        }
    }
    throw std::invalid_argument("make_surface: unknown shape");
}

ParametricMoments parametric_moments(const ParametricSurface& surface, const QuadratureSpec& quad) {
    if (quad.nodes_u1 < 8 || quad.nodes_u2 < 8) {
        throw std::invalid_argument("quadrature needs at least 8 nodes per direction");
    }
    const QuadRule ru = gauss_legendre(quad.nodes_u1, 0.0, std::numbers::pi);
    const QuadRule rv = periodic_trapezoid(quad.nodes_u2, 2.0 * std::numbers::pi);
    double wu2 = 0.0;
    for (double w : rv.weights) wu2 += w;  // integrands are u2-independent here
    ParametricMoments m;
    for (int i = 0; i < quad.nodes_u1; ++i) {
        const double u = ru.nodes[i];
        const double sg = surface.sqrt_g(u);
        const double H = surface.mean_curvature(u);
        std::array<double, 5> r, z;
        surface.profile(u, r, z);
        const double w = ru.weights[i] * wu2;
        m.m0 += w * sg;
        m.m1 += w * H * sg;
        m.m2 += w * H * H * sg;
        // enclosed volume of the solid of revolution
        m.volume += ru.weights[i] * std::numbers::pi * r[0] * r[0] * (-z[1]);
    }
    return m;
}

ParametricMoments parametric_moments_checked(const ParametricSurface& surface, const QuadratureSpec& quad,
                                             double rel_tol) {
    const ParametricMoments coarse = parametric_moments(surface, quad);
    const ParametricMoments fine =
        parametric_moments(surface, {2 * quad.nodes_u1, 2 * quad.nodes_u2});
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    if (rel(coarse.m0, fine.m0) > rel_tol || rel(coarse.m1, fine.m1) > rel_tol ||
        rel(coarse.m2, fine.m2) > rel_tol || rel(coarse.volume, fine.volume) > rel_tol) {
        throw std::runtime_error("parametric quadrature did not converge at the requested node count");
    }
    return fine;
}

EnergyBreakdown parametric_energy(const ParametricSurface& surface, const ModelParams& model,
                                  const QuadratureSpec& quad) {
    const ParametricMoments pm = parametric_moments(surface, quad);
    Moments m;
    m.m0 = pm.m0;
    m.m1 = pm.m1;
    m.m2 = pm.m2;
    EnergyBreakdown e = energy_from_moments(m, model);
    e.enclosed_volume = pm.volume;
    const double R = std::sqrt(m.m0 / (4.0 * std::numbers::pi));
    e.reduced_volume = 3.0 * pm.volume / (4.0 * std::numbers::pi * R * R * R);
    e.da = m.m1 / (2.0 * std::numbers::pi * R);
    e.da_prime = 2.0 * model.D * m.m1 / m.m0;
    return e;
}

double parametric_force_density(const ParametricSurface& surface, const ModelParams& model,
                                const ParametricMoments& pm, double u1) {
    Moments m;
    m.m0 = pm.m0;
    m.m1 = pm.m1;
    m.m2 = pm.m2;
    const MomentPartials p = moment_partials(m, model);
    const Curvatures c = curvature_chain(surface, u1);
    const double f0 = 2.0 * c.H;
    const double f1 = c.G;
    const double f2 = -2.0 * c.H * (c.H * c.H - c.G) - c.lapH;
    return p.dm0 * f0 + p.dm1 * f1 + p.dm2 * f2;
}

ForceField fd_gradient(const std::function<double(const TriMesh&)>& energy, const TriMesh& mesh,
                       double step) {
    TriMesh probe = mesh;
    ForceField force(mesh.num_vertices());
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        for (int c = 0; c < 3; ++c) {
            const double saved = probe.vertices[i][c];
            probe.vertices[i][c] = saved + step;
            const double ep = energy(probe);
            probe.vertices[i][c] = saved - step;
            const double em = energy(probe);
            probe.vertices[i][c] = saved;
            force[i][c] = -(ep - em) / (2.0 * step);
        }
    }
    return force;
}

double force_relative_error(const ForceField& a, const ForceField& b, double eps) {
    double diff2 = 0.0, a2 = 0.0, b2 = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff2 += norm2(a[i] - b[i]);
        a2 += norm2(a[i]);
        b2 += norm2(b[i]);
    }
    return std::sqrt(diff2) / std::max({std::sqrt(a2), std::sqrt(b2), eps});
}

}  // namespace vesicle
