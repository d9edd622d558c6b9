#ifndef NELSON_RADIATION_HPP
#define NELSON_RADIATION_HPP

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "nelson/dynamics.hpp"
#include "nelson/quadrature.hpp"
#include "nelson/system.hpp"

namespace nelson {

// Classical surrogate for the dressed-state expectation values: weighted
// phase-space samples, deterministic in the seed.
struct PhaseSpaceEnsemble {
    std::vector<PhaseSpacePoint> points;
    std::vector<double> weights;  // >= 0, sum to 1
    std::uint64_t seed = 0;
};

// Gaussian product sampling around `center`. spreads == 0 degenerates to the
// center point (small-spread mode).
PhaseSpaceEnsemble sample_wigner_gaussian(const PhaseSpacePoint& center, double pos_spread,
                                          double mom_spread, std::size_t n, std::uint64_t seed);

// Trajectories flowed from the ensemble points, with their weights.
using TrajectoryEnsemble = std::vector<std::pair<double, Trajectory>>;

TrajectoryEnsemble flow_ensemble(const PhaseSpaceEnsemble& ens, double t_final,
                                 const IntegratorConfig& icfg, const SystemConfig& cfg);

// One-photon radiated amplitude
//   a(k, t) = -(eps/sqrt(2)) phi_sigma(|k|) |k|^{-3/2}
//             sum_j e_j kappa . \int_0^t ds e^{i s |k| / eps} [e^{i k.x_j(s)}] xdd_j(s),
// with the retardation phase e^{i k.x_j} dropped under dipole_approx. The
// time integral is Filon-type on the trajectory grid; requires
// dt <= eps / (4 |k|) (under-resolved phases are an error).
std::complex<double> radiated_amplitude(const Vec3& k, double t, const Trajectory& traj,
                                        const SystemConfig& cfg, bool dipole_approx);

// Mode-integrated radiated energy E_rad(t) = \int dk |k| |a(k, t)|^2.
double radiated_energy(double t, const Trajectory& traj, const ModeQuadrature& quad,
                       const SystemConfig& cfg, bool dipole_approx = true);

// Kernel form of the radiated power,
//   P(t) = (eps^3 / 6 pi^2) \int_0^t ds K(t - s) < dd(t) . dd(s) >_ens,
//   K(D) = [sin(D Lambda/eps) - sin(D sigma/eps)] / D,  K(0) = (Lambda-sigma)/eps,
// with dd the charge-weighted dipole acceleration.
double radiated_power_kernel(double t, const TrajectoryEnsemble& ens, const SystemConfig& cfg);

// Larmor form P(t) = (eps^3 / 12 pi) < |dd(t)|^2 >_ens.
double radiated_power_larmor(double t, const TrajectoryEnsemble& ens, const SystemConfig& cfg);

struct RadiationSeries {
    std::vector<double> times;
    std::vector<double> e_rad;
    std::vector<double> p_kernel;
    std::vector<double> p_larmor;
};

// Full time series on every `stride`-th trajectory sample. E_rad accumulates
// incrementally over the shared time grid; reductions are in fixed node
// order (thread-count independent).
RadiationSeries radiation_series(const TrajectoryEnsemble& ens, const ModeQuadrature& quad,
                                 const SystemConfig& cfg, std::size_t stride,
                                 bool dipole_approx = true);

// Angle-integrated spectral density dE_rad/d|k| at the radial nodes of a
// fresh radial rule with `n_radial` points; returns (|k|, dE/d|k|) pairs.
std::vector<std::pair<double, double>> radiated_spectrum(
    double t, const Trajectory& traj, const SystemConfig& cfg, std::size_t n_radial,
    std::size_t n_polar, std::size_t n_azimuth, bool dipole_approx = true);

} // namespace nelson

#endif
