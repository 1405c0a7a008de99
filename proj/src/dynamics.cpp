#include "vesicle/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vesicle {

Regularization parse_regularization(const std::string& name) {
    if (name == "local-area") return Regularization::LocalArea;
    if (name == "equiangulation") return Regularization::Equiangulation;
    if (name == "both") return Regularization::Both;
    throw std::invalid_argument("unknown regularization: " + name);
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::MaxSteps: return "max-steps";
        case Termination::NumericalFailure: return "numerical-failure";
    }
    return "?";
}

ForceField pairwise_damping_force(const TriMesh& mesh, const std::vector<Vec3>& velocities, double gamma) {
    ForceField force(mesh.num_vertices(), Vec3{});
    if (gamma == 0.0) return force;
    for (const Edge& e : mesh.edges) {
        const Vec3 ehat = normalized(mesh.vertices[e.j] - mesh.vertices[e.i]);
        const Vec3 f = -gamma * dot(ehat, velocities[e.i] - velocities[e.j]) * ehat;
        force[e.i] += f;
        force[e.j] -= f;
    }
    return force;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double to_unit_open(std::uint64_t h) {
    // (0, 1]: safe as a log argument
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

double counter_normal(std::uint64_t seed, std::uint64_t step, std::uint64_t index) {
    const std::uint64_t h1 = splitmix64(splitmix64(splitmix64(seed) ^ step) ^ index);
    const std::uint64_t h2 = splitmix64(h1);
    const double u1 = to_unit_open(h1);
    const double u2 = to_unit_open(h2);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ForceField pairwise_stochastic_force(const TriMesh& mesh, long step, double sigma, double dt,
                                     std::uint64_t seed) {
    ForceField force(mesh.num_vertices(), Vec3{});
    if (sigma == 0.0) return force;
    const double amp = sigma / std::sqrt(dt);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& ed = mesh.edges[e];
        const Vec3 ehat = normalized(mesh.vertices[ed.j] - mesh.vertices[ed.i]);
        const Vec3 f = amp * counter_normal(seed, static_cast<std::uint64_t>(step), e) * ehat;
        force[ed.i] += f;
        force[ed.j] -= f;
    }
    return force;
}

namespace {

struct Integrator {
    const ModelParams& model;
    ConstraintParams constraints;
    const IntegratorConfig& config;
    Scheme scheme;
    bool check_convergence;

    TriMesh mesh;
    std::vector<Vec3> velocity;
    double dt = 0.0;
    double gamma = 0.0;
    double sigma0 = 0.0;

    double sigma_at(long step, long max_steps) const {
        if (sigma0 == 0.0) return 0.0;
        const long anneal_start = max_steps - static_cast<long>(config.anneal_fraction * max_steps);
        if (step < anneal_start) return sigma0;
        if (step >= max_steps) return 0.0;
        return sigma0 * static_cast<double>(max_steps - step) / (max_steps - anneal_start);
    }

    ForceField conservative_force() const { return total_force(mesh, model, constraints, scheme); }

    ForceField full_force(const ForceField& conservative, long step, double sigma) const {
        ForceField f = conservative;
        const ForceField damp = pairwise_damping_force(mesh, velocity, gamma);
        for (size_t i = 0; i < f.size(); ++i) f[i] += damp[i];
        if (sigma > 0.0) {
            const ForceField noise = pairwise_stochastic_force(mesh, step, sigma, dt, config.seed);
            for (size_t i = 0; i < f.size(); ++i) f[i] += noise[i];
        }
        return f;
    }

    EnergyBreakdown energy() const {
        if (scheme == Scheme::A) {
            EnergyBreakdown e = penalty_energy(mesh, constraints);
            e.bending = scheme_a_energy(mesh, model.kappa_tilde, model.theta0);
            e.total += e.bending;
            const VertexField field = scheme_b_field(mesh);  // diagnostics only
            const ReducedQuantities rq = reduced_quantities(mesh, field, model.D);
            e.area = rq.area;
            e.enclosed_volume = rq.volume;
            e.reduced_volume = rq.reduced_volume;
            e.da = rq.da;
            e.da_prime = rq.da_prime;
            return e;
        }
        return total_energy(mesh, scheme_field(mesh, scheme), model, constraints);
    }

    double kinetic() const {
        double ke = 0.0;
        for (const Vec3& v : velocity) ke += 0.5 * norm2(v);
        return ke;
    }

    static double max_norm(const ForceField& f) {
        double m = 0.0;
        for (const Vec3& v : f) m = std::max(m, norm(v));
        return m;
    }

    bool finite_state() const {
        for (const Vec3& p : mesh.vertices) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) return false;
        }
        for (const Vec3& v : velocity) {
            if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) return false;
        }
        return true;
    }

    Trajectory run() {
        Trajectory traj;
        traj.dt = dt;
        traj.gamma = gamma;
        traj.sigma = sigma0;

        const double force_tol =
            config.force_tol > 0.0
                ? config.force_tol
                : 1e-6 * model.kappa_b / std::sqrt(total_area(mesh) / (4.0 * std::numbers::pi));
        const bool flips_on = config.regularization != Regularization::LocalArea;
        if (config.regularization == Regularization::Equiangulation) {
            constraints.kappa_area_local = 0.0;
        }

        ForceField fc = conservative_force();
        double window_energy = energy().total + kinetic();
        long window_anchor = 0;

        TriMesh last_good_mesh = mesh;
        std::vector<Vec3> last_good_velocity = velocity;

        auto record = [&](long step) {
            TrajectorySample s;
            s.step = step;
            s.time = step * dt;
            s.energy = energy();
            s.kinetic = kinetic();
            s.fmax = max_norm(fc);
            traj.samples.push_back(s);
        };
        record(0);

        long step = 0;
        while (step < config.max_steps) {
            const double sigma = sigma_at(step, config.max_steps);
            const ForceField f0 = full_force(fc, step, sigma);
            for (int i = 0; i < mesh.num_vertices(); ++i) {
                velocity[i] += 0.5 * dt * f0[i];
                mesh.vertices[i] += dt * velocity[i];
            }
            if (!finite_state()) {
                mesh = last_good_mesh;
                velocity = last_good_velocity;
                traj.reason = Termination::NumericalFailure;
                break;
            }
            fc = conservative_force();
            const ForceField f1 = full_force(fc, step, sigma);
            for (int i = 0; i < mesh.num_vertices(); ++i) {
                velocity[i] += 0.5 * dt * f1[i];
            }
            ++step;

            if (flips_on && config.equiangulation_period > 0 && step % config.equiangulation_period == 0) {
                EquiangulateResult res = equiangulate(mesh);
                if (res.flips > 0) {
                    mesh = std::move(res.mesh);
                    traj.total_edge_flips += res.flips;
                    fc = conservative_force();
                }
            }

            if (step % config.sample_interval == 0 || step == config.max_steps) {
                record(step);
                last_good_mesh = mesh;
                last_good_velocity = velocity;
            }

            if (check_convergence && sigma == 0.0 && step - window_anchor >= config.energy_window) {
                const double e_now = energy().total + kinetic();
                const double rel = std::abs(e_now - window_energy) / std::max(std::abs(e_now), 1e-300);
                window_energy = e_now;
                window_anchor = step;
                if (rel < config.energy_tol && max_norm(fc) < force_tol) {
                    traj.reason = Termination::Converged;
                    break;
                }
            }
        }

        if (traj.reason != Termination::NumericalFailure) {
            if (traj.reason != Termination::Converged) traj.reason = Termination::MaxSteps;
            if (traj.samples.empty() || traj.samples.back().step != step) record(step);
        }
        traj.steps = step;
        traj.final_mesh = mesh;
        traj.final_velocities = velocity;
        return traj;
    }
};

Integrator make_integrator(const TriMesh& initial, const ModelParams& model,
                           const ConstraintParams& constraints, const IntegratorConfig& config,
                           Scheme scheme, bool check_convergence) {
    Integrator integ{model, constraints, config, scheme, check_convergence,
                     initial,  std::vector<Vec3>(initial.num_vertices(), Vec3{})};
    integ.dt = config.dt > 0.0 ? config.dt : stable_dt(initial, model, constraints, scheme, config);
    integ.gamma = config.gamma >= 0.0 ? config.gamma : 1.0 / (50.0 * integ.dt);
    if (config.sigma >= 0.0) {
        integ.sigma0 = config.sigma;
    } else {
        const double kBT = config.kBT >= 0.0 ? config.kBT : 1e-4 * model.kappa_b;
        integ.sigma0 = std::sqrt(2.0 * integ.gamma * kBT);
    }
    return integ;
}

}  // namespace

double stable_dt(const TriMesh& mesh, const ModelParams& model, const ConstraintParams& constraints,
                 Scheme scheme, const IntegratorConfig& config) {
    const double limit = 0.05 * mean_edge_length(mesh);
    double dt = config.dt_init;
    for (int attempt = 0; attempt < 60; ++attempt, dt *= 0.5) {
        TriMesh trial = mesh;
        std::vector<Vec3> vel(mesh.num_vertices(), Vec3{});
        const double gamma = config.gamma >= 0.0 ? config.gamma : 1.0 / (50.0 * dt);
        bool ok = true;
        ForceField fc = total_force(trial, model, constraints, scheme);
        for (int step = 0; step < 100 && ok; ++step) {
            ForceField f = fc;
            const ForceField damp = pairwise_damping_force(trial, vel, gamma);
            for (size_t i = 0; i < f.size(); ++i) f[i] += damp[i];
            double max_disp = 0.0;
            for (int i = 0; i < trial.num_vertices(); ++i) {
                vel[i] += 0.5 * dt * f[i];
                const Vec3 dx = dt * vel[i];
                max_disp = std::max(max_disp, norm(dx));
                trial.vertices[i] += dx;
            }
            if (!(max_disp < limit)) {
                ok = false;
                break;
            }
            fc = total_force(trial, model, constraints, scheme);
            const ForceField damp2 = pairwise_damping_force(trial, vel, gamma);
            for (int i = 0; i < trial.num_vertices(); ++i) {
                vel[i] += 0.5 * dt * (fc[i] + damp2[i]);
                if (!std::isfinite(norm2(vel[i]))) ok = false;
            }
        }
        if (ok) return dt;
    }
    throw std::runtime_error("stable_dt: no stable time step found");
}

Trajectory minimize(const TriMesh& initial, const ModelParams& model, const ConstraintParams& constraints,
                    const IntegratorConfig& config, Scheme scheme) {
    return make_integrator(initial, model, constraints, config, scheme, true).run();
}

Trajectory ground_state(const std::vector<TriMesh>& initials, const ModelParams& model,
                        const ConstraintParams& constraints, const IntegratorConfig& config, Scheme scheme) {
    if (initials.empty()) throw std::invalid_argument("ground_state: no initial shapes");
    Trajectory best;
    bool first = true;
    for (const TriMesh& init : initials) {
        Trajectory t = minimize(init, model, constraints, config, scheme);
        if (first || t.final_energy() < best.final_energy()) {
            best = std::move(t);
            first = false;
        }
    }
    return best;
}

Trajectory run_dynamics(const TriMesh& initial, const ModelParams& model,
                        const ConstraintParams& constraints, const IntegratorConfig& config, Scheme scheme) {
    return make_integrator(initial, model, constraints, config, scheme, false).run();
}

}  // namespace vesicle
