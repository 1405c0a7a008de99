#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_helpers.hpp"
#include "vesicle/mesh.hpp"
#include "vesicle/models.hpp"
#include "vesicle/oracle.hpp"
#include "vesicle/quadrature.hpp"

using namespace vesicle;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const QuadRule r = gauss_legendre(8, 0.0, 2.0);
    double s0 = 0.0, s7 = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        s0 += r.weights[i];
        s7 += r.weights[i] * std::pow(r.nodes[i], 15.0);  // degree 15 = 2n-1
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s7 == doctest::Approx(std::pow(2.0, 16.0) / 16.0).epsilon(1e-13));

    // nodes stay strictly inside the interval (no pole evaluation)
    for (double x : r.nodes) {
        CHECK(x > 0.0);
        CHECK(x < 2.0);
    }
}

TEST_CASE("sphere surface identities are exact") {
    auto s = make_sphere_surface(2.0);
    for (double u : {0.3, 1.0, kPi / 2, 2.5}) {
        CHECK(s->mean_curvature(u) == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(s->gaussian_curvature(u) == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(s->laplace_mean_curvature(u) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(s->sqrt_g(u) == doctest::Approx(4.0 * std::sin(u)).epsilon(1e-13));
        // inward normal points to the center
        const Vec3 n = s->normal(u, 0.7);
        const Vec3 x = s->position(u, 0.7);
        CHECK(norm(n + x / 2.0) < 1e-13);
    }
}

TEST_CASE("parametric moments: sphere closed forms") {
    auto s = make_sphere_surface(1.0);
    const ParametricMoments m = parametric_moments_checked(*s, {64, 16});
    CHECK(m.m0 == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(m.m1 == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(m.m2 == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(m.volume == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("prolate ellipsoid area matches the closed form") {
    const double a = 1.0, c = 2.0;
    auto s = make_ellipsoid_surface(a, c);
    const ParametricMoments m = parametric_moments_checked(*s, {64, 16});
    const double e = std::sqrt(1.0 - a * a / (c * c));
    const double area = 2.0 * kPi * a * a * (1.0 + c / (a * e) * std::asin(e));
    CHECK(m.m0 == doctest::Approx(area).epsilon(1e-10));
    CHECK(m.volume == doctest::Approx(4.0 / 3.0 * kPi * a * a * c).epsilon(1e-10));
}

TEST_CASE("biconcave oracle: reduced volume ~ 0.642, dimple H < 0") {
    auto s = make_biconcave_surface(1.0);
    const ParametricMoments m = parametric_moments_checked(*s, {96, 16});
    const double R = std::sqrt(m.m0 / (4.0 * kPi));
    const double v = 3.0 * m.volume / (4.0 * kPi * R * R * R);
    CHECK(v == doctest::Approx(0.642).epsilon(0.01));
    CHECK(s->mean_curvature(0.02) < 0.0);   // dimple
    CHECK(s->mean_curvature(kPi / 2) > 0.0);  // rim
}

TEST_CASE("laplace_mean_curvature agrees with parameter-space finite differences") {
    // independent check of the 4th-order profile derivative chain
    for (auto& surf : {make_ellipsoid_surface(1.0, 1.7), make_biconcave_surface(1.0)}) {
        for (double u : {0.4, 0.9, kPi / 2, 1.9, 2.6}) {
            std::array<double, 5> r, z;
            surf->profile(u, r, z);
            const double h = 1e-4;
            auto H = [&](double uu) { return surf->mean_curvature(uu); };
            const double hp_fd = (H(u + h) - H(u - h)) / (2.0 * h);
            const double hpp_fd = (H(u + h) - 2.0 * H(u) + H(u - h)) / (h * h);
            const double w = r[1] * r[1] + z[1] * z[1];
            const double wp = 2.0 * (r[1] * r[2] + z[1] * z[2]);
            const double lap_fd =
                (r[1] * hp_fd + r[0] * hpp_fd - r[0] * hp_fd * 0.5 * wp / w) / (r[0] * w);
            CHECK(surf->mean_curvature_deriv(u) == doctest::Approx(hp_fd).epsilon(1e-6));
            CHECK(surf->laplace_mean_curvature(u) == doctest::Approx(lap_fd).epsilon(1e-4));
        }
    }
}

TEST_CASE("quadrature convergence: node doubling changes energies below 1e-10") {
    const ModelParams model = ModelParams::spontaneous(1.0, -0.5, 1.0);
    for (auto& surf :
         {make_sphere_surface(1.0), make_ellipsoid_surface(0.8, 1.9), make_biconcave_surface(1.0)}) {
        const double e1 = parametric_energy(*surf, model, {64, 16}).total;
        const double e2 = parametric_energy(*surf, model, {128, 32}).total;
        CHECK(std::abs(e1 - e2) / std::abs(e2) < 1e-10);
    }
}

TEST_CASE("parametric energy: sphere closed forms for minimal and SC models") {
    auto s = make_sphere_surface(1.0);
    CHECK(parametric_energy(*s, ModelParams::minimal(1.0), {64, 16}).total ==
          doctest::Approx(8.0 * kPi).epsilon(1e-12));
    CHECK(parametric_energy(*s, ModelParams::spontaneous(1.0, -0.5, 1.0), {64, 16}).total ==
          doctest::Approx(18.0 * kPi).epsilon(1e-12));
}

TEST_CASE("parametric force density on the sphere") {
    auto s = make_sphere_surface(1.0);
    const ParametricMoments m = parametric_moments(*s, {64, 16});

    SUBCASE("minimal model: zero everywhere") {
        for (double u : {0.3, 1.2, 2.2}) {
            CHECK(parametric_force_density(*s, ModelParams::minimal(1.0), m, u) ==
                  doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    SUBCASE("spontaneous curvature: f = 4 kappa h0 (h0 - 1) at R = 1") {
        const ModelParams sc = ModelParams::spontaneous(1.0, -0.5, 1.0);
        // f^S = 4 kappa H0 (H0 H - G) = 3 at H = G = 1
        for (double u : {0.5, 1.5}) {
            CHECK(parametric_force_density(*s, sc, m, u) == doctest::Approx(3.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("fd_gradient returns -dE/dx for a quadratic energy") {
    const TriMesh mesh = build_icosphere(0, 1.0);
    auto energy = [](const TriMesh& m) {
        double e = 0.0;
        for (const Vec3& v : m.vertices) e += norm2(v);
        return e;
    };
    const ForceField f = fd_gradient(energy, mesh, 1e-6);
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        CHECK(norm(f[i] + 2.0 * mesh.vertices[i]) < 1e-8);
    }
}

TEST_CASE("fd_gradient of a rigid-invariant energy has near-zero net force") {
    const TriMesh mesh = vesicle::testing::perturbed_icosphere(1, 0.1, 31);
    auto energy = [](const TriMesh& m) { return total_area(m); };
    const ForceField f = fd_gradient(energy, mesh, 1e-5);
    Vec3 net{};
    for (const Vec3& v : f) net += v;
    CHECK(norm(net) < 1e-8);
}

TEST_CASE("discrete moments converge to parametric moments with resolution") {
    auto surf = make_biconcave_surface(1.0);
    const ParametricMoments ref = parametric_moments(*surf, {128, 16});
    double prev[3] = {1e18, 1e18, 1e18};
    for (int level : {2, 3, 4}) {
        const TriMesh mesh =
            map_to_shape(build_icosphere(level, 1.0), {ShapeKind::BiconcaveOblate, 0.0, 1.0});
        const Moments m = moments(scheme_b_field(mesh));
        const double err[3] = {std::abs(m.m0 - ref.m0), std::abs(m.m1 - ref.m1),
                               std::abs(m.m2 - ref.m2)};
        for (int k = 0; k < 3; ++k) {
            CHECK(err[k] < prev[k]);
            prev[k] = err[k];
        }
    }
}
