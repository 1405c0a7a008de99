#pragma once

#include <cstdint>
#include <vector>

#include "vesicle/mesh.hpp"
#include "vesicle/models.hpp"
#include "vesicle/schemes.hpp"

namespace vesicle {

enum class Regularization { LocalArea, Equiangulation, Both };
enum class Termination { Converged, MaxSteps, NumericalFailure };

Regularization parse_regularization(const std::string& name);
const char* to_string(Termination t);

/// Damped, optionally thermalized velocity-Verlet relaxation. Negative
/// dt/gamma/sigma select the documented automatic choices.
struct IntegratorConfig {
    double dt = -1.0;          // <0: stability pre-scan starting from dt_init
    double dt_init = 0.2;
    double gamma = -1.0;       // <0: edge damping time = 50 dt
    double kBT = -1.0;         // <0: 1e-4 * kappa_b; sigma^2 = 2 gamma kBT
    double sigma = -1.0;       // explicit noise amplitude; 0 disables noise
    long max_steps = 200000;
    double force_tol = -1.0;   // <0: 1e-6 * kappa_b / R
    double energy_tol = 1e-8;  // relative energy change over the window
    long energy_window = 1000;
    Regularization regularization = Regularization::Both;
    long equiangulation_period = 500;
    double anneal_fraction = 0.25;  // sigma decays linearly to 0 over this final fraction
    long sample_interval = 1000;
    std::uint64_t seed = 12345;
};

struct TrajectorySample {
    long step = 0;
    double time = 0.0;
    EnergyBreakdown energy;
    double kinetic = 0.0;
    double fmax = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    TriMesh final_mesh;
    std::vector<Vec3> final_velocities;
    Termination reason = Termination::MaxSteps;
    long steps = 0;
    double dt = 0.0;
    double gamma = 0.0;
    double sigma = 0.0;
    int total_edge_flips = 0;

    double final_energy() const { return samples.empty() ? 0.0 : samples.back().energy.total; }
};

/// Central pairwise damping along each edge: F_i -= gamma (e.(v_i-v_j)) e.
/// Sums to zero exactly and exerts no net torque.
ForceField pairwise_damping_force(const TriMesh& mesh, const std::vector<Vec3>& velocities, double gamma);

/// Antisymmetric pairwise white noise of magnitude sigma/sqrt(dt) along each
/// edge. The normal deviate is a counter-based function of (seed, step,
/// edge), so the field is reproducible independent of evaluation order.
ForceField pairwise_stochastic_force(const TriMesh& mesh, long step, double sigma, double dt,
                                     std::uint64_t seed);

/// Standalone N(0,1) deviate keyed on (seed, step, index).
double counter_normal(std::uint64_t seed, std::uint64_t step, std::uint64_t index);

/// Halves dt from config.dt_init until 100 trial steps keep the largest
/// per-step displacement under 5% of the mean edge length.
double stable_dt(const TriMesh& mesh, const ModelParams& model, const ConstraintParams& constraints,
                 Scheme scheme, const IntegratorConfig& config);

/// Damped relaxation toward a local energy minimum; convergence requires the
/// annealed noise to have reached zero, max conservative force below the
/// tolerance and the windowed relative energy change below energy_tol.
Trajectory minimize(const TriMesh& initial, const ModelParams& model, const ConstraintParams& constraints,
                    const IntegratorConfig& config, Scheme scheme);

/// Runs minimize from each seed mesh and returns the lowest final energy.
Trajectory ground_state(const std::vector<TriMesh>& initials, const ModelParams& model,
                        const ConstraintParams& constraints, const IntegratorConfig& config, Scheme scheme);

/// Thermalized trajectory run to max_steps (no convergence cutoff).
Trajectory run_dynamics(const TriMesh& initial, const ModelParams& model,
                        const ConstraintParams& constraints, const IntegratorConfig& config, Scheme scheme);

}  // namespace vesicle
