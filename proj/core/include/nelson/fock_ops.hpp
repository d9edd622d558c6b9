#ifndef NELSON_FOCK_OPS_HPP
#define NELSON_FOCK_OPS_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nelson/fock.hpp"
#include "nelson/sparse.hpp"
#include "nelson/system.hpp"

namespace nelson {

// a(f) = sum_m conj(f_m) a_m with <n - e_m| a_m |n> = sqrt(n_m).
SparseOperator annihilation_op(const std::vector<std::complex<double>>& f, const FockBasis& basis);

// a(f)^dagger.
SparseOperator creation_op(const std::vector<std::complex<double>>& f, const FockBasis& basis);

// Segal field operator Phi(f) = (a(f) + a(f)^dagger) / sqrt(2).
SparseOperator field_op(const std::vector<std::complex<double>>& f, const FockBasis& basis);

// dGamma(omega): diagonal sum_m omega_m n_m.
SparseOperator second_quantization(const std::vector<double>& omega, const FockBasis& basis);

// Discrete van Hove Hamiltonian dGamma(omega) + Phi(z).
SparseOperator van_hove_hamiltonian(const std::vector<std::complex<double>>& z,
                                    const std::vector<double>& omega, const FockBasis& basis);

// z_m = sqrt(w_m) |k_m| v(x, k_m): quadrature-normalized coupling of the
// fibered Hamiltonian at frozen particle positions x.
std::vector<std::complex<double>> fibered_coupling(const Configuration& x, const ModeGrid& grid,
                                                   const SystemConfig& cfg);

SparseOperator van_hove_hamiltonian(const Configuration& x, const ModeGrid& grid,
                                    const FockBasis& basis, const SystemConfig& cfg);

// Exact bottom of the discrete van Hove spectrum: -1/2 sum_m |z_m|^2/omega_m.
double discrete_alpha(const std::vector<std::complex<double>>& z, const std::vector<double>& omega);

// Coherent displacement amplitudes per mode.
struct CoherentVector {
    std::vector<std::complex<double>> alpha;
};

// Dressing operator V = exp(i Phi(i u)) as a dense unitary on the truncated
// basis, with u_m the displacement amplitudes (u = z / omega for the van
// Hove diagonalization). V|0> is the coherent state alpha = -u/sqrt(2).
struct DressingOperator {
    Eigen::MatrixXcd u;
    double unitarity_defect = 0.0; // max |U U^dag - 1|
    CoherentVector coherent;       // predicted alpha_m
};

DressingOperator displacement_from_amplitudes(const std::vector<std::complex<double>>& u,
                                              const FockBasis& basis);

// V_sigma(x) = e^{i Phi(i v_sigma(x, .))}; requires sigma > 0.
DressingOperator dressing_displacement(const Configuration& x, const ModeGrid& grid,
                                       const FockBasis& basis, const SystemConfig& cfg);

} // namespace nelson

#endif
