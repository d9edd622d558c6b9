#ifndef NELSON_CLASSICAL_FIELD_HPP
#define NELSON_CLASSICAL_FIELD_HPP

#include <complex>
#include <utility>
#include <vector>

#include "nelson/dynamics.hpp"
#include "nelson/quadrature.hpp"
#include "nelson/system.hpp"

namespace nelson {

// Field modes on a conjugate-symmetry half-space (k_z > 0 representatives,
// the -k partner implied), so phi(-k) = conj(phi(k)) holds exactly.
struct FieldState {
    std::vector<std::complex<double>> phi; // mode amplitudes
    std::vector<std::complex<double>> pi;  // mode velocities
};

// Microscopic state: field plus particle positions/velocities (mass eps^-2).
struct CoupledState {
    FieldState field;
    std::vector<Vec3> q;
    std::vector<Vec3> v;
    double time = 0.0; // microscopic time
};

// Mode-decomposed integrator for the coupled particle-scalar-field system:
// each mode is a driven harmonic oscillator, advanced by Strang splitting
// (exact free rotation, particle kick-drift-kick with frozen sources).
class ClassicalFieldSim {
public:
    ClassicalFieldSim(const SystemConfig& cfg, const ModeQuadrature& quad);

    std::size_t mode_count() const { return k_.size(); } // half-space modes

    // Co-moving equilibrium field for the given macroscopic phase point:
    // phi_eq = -rho_hat/k^2, pi_eq = -(d/dt) rho_hat / k^2.
    CoupledState equilibrium_state(const PhaseSpacePoint& macro) const;

    // Zero-field ("bare") initial condition; radiates an initial burst.
    CoupledState bare_state(const PhaseSpacePoint& macro) const;

    std::vector<Vec3> force(const CoupledState& s) const;

    void step(CoupledState& s, double dt_micro) const;

    double energy(const CoupledState& s) const;
    Vec3 momentum(const CoupledState& s) const;

    // Per-mode field energy density (|k|, w (|pi|^2 + k^2 |phi|^2)).
    std::vector<std::pair<double, double>> field_spectrum(const CoupledState& s) const;

    // Integrate to macroscopic time t_macro (micro horizon t_macro/eps) and
    // return the macroscopic trajectory (x = q, p = v/eps) sampled every
    // `stride` steps. Throws if |E - E0| exceeds drift_tol * scale * t_macro.
    Trajectory run(const PhaseSpacePoint& macro_start, double t_macro, double dt_micro,
                   std::size_t stride, bool bare_field = false,
                   double drift_tol = 1e-4) const;

    const SystemConfig& config() const { return cfg_; }

private:
    SystemConfig cfg_;
    std::vector<Vec3> k_;
    std::vector<double> w_;     // full-shell weight of the (k, -k) pair
    std::vector<double> omega_;
    std::vector<double> ff_;    // form factor at |k|

    std::vector<std::complex<double>> source(const Configuration& q) const; // rho_hat(k)
};

struct ScalingRow {
    double epsilon;
    double deviation_coulomb;
    double deviation_darwin;
};

struct ScalingStudyConfig {
    std::vector<double> epsilons{0.2, 0.1, 0.05};
    double t_macro = 1.0;
    double dt_micro = 0.02;
    double dt_macro = 2e-4;     // effective-flow step
    std::size_t n_radial = 24;
    std::size_t n_polar = 12;
    std::size_t n_azimuth = 12;
};

// Full simulation vs effective flows started from the same macroscopic
// point; deviations are max_t |q_full - x_eff| over the sampled times.
std::vector<ScalingRow> epsilon_scaling_study(const SystemConfig& base,
                                              const PhaseSpacePoint& start,
                                              const ScalingStudyConfig& study);

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace nelson

#endif
