#include "vesicle/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vesicle/geometry.hpp"

namespace vesicle {

ModelKind parse_model_kind(const std::string& name) {
    if (name == "minimal") return ModelKind::Minimal;
    if (name == "sc" || name == "spontaneous") return ModelKind::SpontaneousCurvature;
    if (name == "bc" || name == "bilayer-couple") return ModelKind::BilayerCouple;
    if (name == "ade") return ModelKind::AreaDifference;
    throw std::invalid_argument("unknown model: " + name);
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Minimal: return "minimal";
        case ModelKind::SpontaneousCurvature: return "sc";
        case ModelKind::BilayerCouple: return "bc";
        case ModelKind::AreaDifference: return "ade";
    }
    return "?";
}

ModelParams ModelParams::minimal(double kappa_b) {
    ModelParams p;
    p.kind = ModelKind::Minimal;
    p.kappa_b = kappa_b;
    p.kappa_tilde = std::sqrt(3.0) * kappa_b;
    return p;
}

ModelParams ModelParams::spontaneous(double kappa_b, double h0, double R) {
    ModelParams p = minimal(kappa_b);
    p.kind = ModelKind::SpontaneousCurvature;
    p.H0 = h0 / R;
    return p;
}

ModelParams ModelParams::ade(double kappa_b, double alpha, double da0, double R, double thickness) {
    ModelParams p = minimal(kappa_b);
    p.kind = ModelKind::AreaDifference;
    p.alpha = alpha;
    p.D = thickness;
    p.dA0 = da0 * 4.0 * std::numbers::pi * R * thickness;
    return p;
}

ModelParams ModelParams::bilayer_couple(double kappa_b, double alpha, double da0, double R,
                                        double thickness) {
    ModelParams p = ade(kappa_b, alpha * kBilayerCoupleAlphaFactor, da0, R, thickness);
    p.kind = ModelKind::BilayerCouple;
    return p;
}

void ConstraintParams::set_uniform_local_targets(double total_area, int num_triangles) {
    tri_area_targets.assign(num_triangles, total_area / num_triangles);
}

EnergyBreakdown energy_from_moments(const Moments& m, const ModelParams& model) {
    EnergyBreakdown e;
    const double k = model.kappa_b;
    e.bending = 2.0 * k * (m.m2 - 2.0 * model.H0 * m.m1 + model.H0 * model.H0 * m.m0);
    if (model.has_ade()) {
        const double excess = 2.0 * m.m1 - model.dA0 / model.D;
        e.ade = model.alpha * k * std::numbers::pi / (2.0 * m.m0) * excess * excess;
    }
    e.total = e.bending + e.ade;
    e.area = m.m0;
    return e;
}

MomentPartials moment_partials(const Moments& m, const ModelParams& model) {
    MomentPartials p;
    const double k = model.kappa_b;
    p.dm2 = 2.0 * k;
    p.dm1 = -4.0 * k * model.H0;
    p.dm0 = 2.0 * k * model.H0 * model.H0;
    if (model.has_ade()) {
        const double c = model.alpha * k * std::numbers::pi;
        const double excess = 2.0 * m.m1 - model.dA0 / model.D;
        p.dm1 += 2.0 * c / m.m0 * excess;
        p.dm0 -= 0.5 * c / (m.m0 * m.m0) * excess * excess;
    }
    return p;
}

EnergyBreakdown penalty_energy(const TriMesh& mesh, const ConstraintParams& c) {
    EnergyBreakdown e;
    const auto prims = triangle_prims(mesh);
    double area = 0.0;
    for (const auto& p : prims) area += p.area;
    if (c.kappa_area_global > 0.0) {
        const double d = area - c.area_target;
        e.area_global = c.kappa_area_global * d * d / c.area_target;
    }
    if (c.kappa_area_local > 0.0) {
        if (static_cast<int>(c.tri_area_targets.size()) != mesh.num_triangles()) {
            throw std::invalid_argument("local-area targets do not match triangle count");
        }
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const double d = prims[t].area - c.tri_area_targets[t];
            e.area_local += c.kappa_area_local * d * d / c.tri_area_targets[t];
        }
    }
    if (c.kappa_volume > 0.0) {
        const double d = total_volume(mesh) - c.volume_target;
        e.volume = c.kappa_volume * d * d / c.volume_target;
    }
    e.total = e.area_global + e.area_local + e.volume;
    return e;
}

ForceField penalty_force(const TriMesh& mesh, const ConstraintParams& c) {
    ForceField force(mesh.num_vertices(), Vec3{});
    const bool need_local = c.kappa_area_local > 0.0;
    if (need_local && static_cast<int>(c.tri_area_targets.size()) != mesh.num_triangles()) {
        throw std::invalid_argument("local-area targets do not match triangle count");
    }

    if (c.kappa_area_global > 0.0 || need_local) {
        const auto prims = triangle_prims(mesh);
        double area = 0.0;
        for (const auto& p : prims) area += p.area;
        const double wg =
            c.kappa_area_global > 0.0 ? 2.0 * c.kappa_area_global * (area - c.area_target) / c.area_target
                                      : 0.0;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            double w = wg;
            if (need_local) {
                w += 2.0 * c.kappa_area_local * (prims[t].area - c.tri_area_targets[t]) /
                     c.tri_area_targets[t];
            }
            if (w == 0.0) continue;
            const auto da = d_tri_area(mesh, t);
            for (int cidx = 0; cidx < 3; ++cidx) force[mesh.triangles[t][cidx]] -= w * da[cidx];
        }
    }
    if (c.kappa_volume > 0.0) {
        const double w = 2.0 * c.kappa_volume * (total_volume(mesh) - c.volume_target) / c.volume_target;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const auto dv = d_tet_volume(mesh, t);
            for (int cidx = 0; cidx < 3; ++cidx) force[mesh.triangles[t][cidx]] -= w * dv[cidx];
        }
    }
    return force;
}

EnergyBreakdown total_energy(const TriMesh& mesh, const VertexField& field, const ModelParams& model,
                             const ConstraintParams& constraints) {
    if (field.scheme == Scheme::A) {
        throw std::invalid_argument("scheme A supports only its own dihedral energy, not the moment models");
    }
    const Moments m = moments(field);
    EnergyBreakdown e = energy_from_moments(m, model);
    const EnergyBreakdown pen = penalty_energy(mesh, constraints);
    e.area_global = pen.area_global;
    e.area_local = pen.area_local;
    e.volume = pen.volume;
    e.total = e.bending + e.ade + pen.total;

    e.enclosed_volume = total_volume(mesh);
    const double R = std::sqrt(m.m0 / (4.0 * std::numbers::pi));
    e.reduced_volume = 3.0 * e.enclosed_volume / (4.0 * std::numbers::pi * R * R * R);
    e.da = m.m1 / (2.0 * std::numbers::pi * R);  // thickness cancels in dA/(4 pi R D)
    e.da_prime = 2.0 * model.D * m.m1 / m.m0;
    return e;
}

ForceField total_force(const TriMesh& mesh, const ModelParams& model, const ConstraintParams& constraints,
                       Scheme scheme) {
    ForceField force;
    if (scheme == Scheme::A) {
        force = scheme_a_force(mesh, model.kappa_tilde, model.theta0);
    } else {
        const VertexField field = scheme_field(mesh, scheme);
        const MomentPartials partials = moment_partials(moments(field), model);
        switch (scheme) {
            case Scheme::B: force = scheme_b_force(mesh, field, partials); break;
            case Scheme::C: force = scheme_c_force(mesh, field, partials); break;
            case Scheme::D: force = scheme_d_force(mesh, field, partials); break;
            case Scheme::A: break;
        }
    }
    const ForceField pen = penalty_force(mesh, constraints);
    for (size_t i = 0; i < force.size(); ++i) force[i] += pen[i];
    return force;
}

ReducedQuantities reduced_quantities(const TriMesh& mesh, const VertexField& field, double thickness,
                                     double radius) {
    ReducedQuantities r;
    const Moments m = moments(field);
    r.area = m.m0;
    r.volume = total_volume(mesh);
    r.radius = radius > 0.0 ? radius : std::sqrt(m.m0 / (4.0 * std::numbers::pi));
    r.reduced_volume = 3.0 * r.volume / (4.0 * std::numbers::pi * r.radius * r.radius * r.radius);
    const double dA = 2.0 * thickness * m.m1;
    r.da = dA / (4.0 * std::numbers::pi * r.radius * thickness);
    r.da_prime = dA / m.m0;
    return r;
}

}  // namespace vesicle
