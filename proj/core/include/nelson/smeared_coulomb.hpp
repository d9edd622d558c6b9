#ifndef NELSON_SMEARED_COULOMB_HPP
#define NELSON_SMEARED_COULOMB_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "nelson/system.hpp"

namespace nelson {

// Coupling function v(x, k) = sum_j e^{i k.x_j} e_j phi_hat(k) / |k|^{3/2}.
// Domain error at k = 0; vanishes outside the cutoff shell.
std::complex<double> coupling_v(const Configuration& x, const Vec3& k, const SystemConfig& cfg);

// Effective pair potential
//   V_ij(r) = -e_i e_j \int_{sigma<|k|<Lambda} dk (2pi)^{-3} e^{i k.r} / |k|^2
//           = -e_i e_j [Si(Lambda r) - Si(sigma r)] / (2 pi^2 r).
//
// NOTE on sign: this is the paper-convention potential, which is the negative
// of the electrostatic interaction energy of the two charge clouds. Like
// charges therefore attract under the flows generated here (scalar field).
double pair_potential(double r, double e_i, double e_j, const FormFactor& ff);

// d/dr of pair_potential at fixed charges; vanishes at r = 0 (smearing makes
// V a C^1 function of r on [0, inf)).
double pair_potential_deriv(double r, double e_i, double e_j, const FormFactor& ff);

// Field self-energy coefficient e~_j = e_j^2 (Lambda - sigma) / (2 pi^2).
double mass_renorm_etilde(std::size_t j, const SystemConfig& cfg);

// Renormalized mass m_j^eps = 1 / (1 + (eps^2/2) e~_j).
double effective_mass(std::size_t j, const SystemConfig& cfg);

// Sum of all self-energies: e_0 = -(1/2) sum_j e~_j.
double self_energy_e0(const SystemConfig& cfg);

// Bottom of the fibered spectrum: E(x) = (1/2) sum_{i != j} V_ij + e_0
// (equals E_sigma(x) when the form factor carries sigma > 0).
double ground_energy(const Configuration& x, const SystemConfig& cfg);

// Analytic gradient of ground_energy, one Vec3 per particle.
std::vector<Vec3> grad_ground_energy(const Configuration& x, const SystemConfig& cfg);

} // namespace nelson

#endif
