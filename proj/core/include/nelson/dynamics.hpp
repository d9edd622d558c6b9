#ifndef NELSON_DYNAMICS_HPP
#define NELSON_DYNAMICS_HPP

#include <functional>
#include <vector>

#include "nelson/system.hpp"

namespace nelson {

enum class Scheme { leapfrog, rk4 };

struct IntegratorConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::leapfrog;
    bool darwin_enabled = false;
    // Relative energy-drift budget for the whole run; exceeding it raises.
    double drift_tolerance = 1e-6;
    // Keep every `stride`-th step in the trajectory (1 = all).
    std::size_t stride = 1;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<PhaseSpacePoint> states;
    std::vector<double> energies;
    // Exact particle accelerations at the stored times. Filled by the flows
    // (from forces) and by prescribed-trajectory builders (analytically).
    std::vector<std::vector<Vec3>> accelerations;

    std::size_t size() const { return times.size(); }
    double dt() const { return size() > 1 ? times[1] - times[0] : 0.0; }
};

// H = sum_j p_j^2/2 + E(x), or with darwin enabled
// H = sum_j p_j^2/(2 m_j^eps) + E(x) + D(x, p).
double effective_hamiltonian(const PhaseSpacePoint& pt, const SystemConfig& cfg, bool darwin);

// Integrates the effective flow up to t_final from `start`. leapfrog
// (velocity Verlet) for the Coulomb-level flow; rk4 for the Darwin flow
// whose Hamiltonian is not kinetic-plus-potential separable. Throws if the
// relative energy drift exceeds icfg.drift_tolerance.
Trajectory classical_flow(const PhaseSpacePoint& start, double t_final,
                          const IntegratorConfig& icfg, const SystemConfig& cfg);

// Per-particle accelerations at trajectory sample `i`, from stored values.
const std::vector<Vec3>& accelerations_at(const Trajectory& traj, std::size_t i);

// Second time derivative of the dipole moment, d(t) = sum_j e_j x_j(t),
// evaluated from forces (never by double differencing).
std::vector<Vec3> dipole_acceleration(const Trajectory& traj, const SystemConfig& cfg);

// Sampled analytic trajectory x_j(t), v_j(t), a_j(t) given as callables;
// used for prescribed radiation sources and test oracles.
Trajectory prescribed_trajectory(
    const std::function<std::vector<Vec3>(double)>& position,
    const std::function<std::vector<Vec3>(double)>& velocity,
    const std::function<std::vector<Vec3>(double)>& acceleration,
    double t_final, double dt);

// Single charge on x(t) = (A sin(w t), 0, 0): the oscillator preset used by
// the radiation experiments.
Trajectory oscillator_trajectory(double amplitude, double omega, double t_final, double dt);

} // namespace nelson

#endif
