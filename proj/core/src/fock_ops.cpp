#include "nelson/fock_ops.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "nelson/smeared_coulomb.hpp"

namespace nelson {

using cd = std::complex<double>;

SparseOperator annihilation_op(const std::vector<cd>& f, const FockBasis& basis) {
    if (f.size() != basis.n_modes())
        throw std::invalid_argument("annihilation_op: amplitude count != mode count");
    std::vector<SparseOperator::Triplet> trip;
    for (std::size_t idx = 0; idx < basis.dim(); ++idx) {
        const auto& occ = basis.occupations(idx);
        for (std::size_t m = 0; m < basis.n_modes(); ++m) {
            if (occ[m] == 0 || f[m] == cd(0.0, 0.0)) continue;
            const std::size_t row = basis.lowered(idx, m);
            if (row == FockBasis::npos) continue;
            trip.emplace_back(row, idx, std::conj(f[m]) * std::sqrt(static_cast<double>(occ[m])));
        }
    }
    return SparseOperator(basis.dim(), std::move(trip));
}

SparseOperator creation_op(const std::vector<cd>& f, const FockBasis& basis) {
    return annihilation_op(f, basis).adjoint();
}

SparseOperator field_op(const std::vector<cd>& f, const FockBasis& basis) {
    const SparseOperator a = annihilation_op(f, basis);
    return SparseOperator::add(a, a.adjoint(), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
}

SparseOperator second_quantization(const std::vector<double>& omega, const FockBasis& basis) {
    if (omega.size() != basis.n_modes())
        throw std::invalid_argument("second_quantization: frequency count != mode count");
    std::vector<SparseOperator::Triplet> trip;
    trip.reserve(basis.dim());
    for (std::size_t idx = 0; idx < basis.dim(); ++idx) {
        const auto& occ = basis.occupations(idx);
        double e = 0.0;
        for (std::size_t m = 0; m < basis.n_modes(); ++m) e += omega[m] * occ[m];
        trip.emplace_back(idx, idx, cd(e, 0.0));
    }
    return SparseOperator(basis.dim(), std::move(trip));
}

SparseOperator van_hove_hamiltonian(const std::vector<cd>& z, const std::vector<double>& omega,
                                    const FockBasis& basis) {
    return SparseOperator::add(second_quantization(omega, basis), field_op(z, basis));
}

std::vector<cd> fibered_coupling(const Configuration& x, const ModeGrid& grid,
                                 const SystemConfig& cfg) {
    std::vector<cd> z;
    z.reserve(grid.size());
    for (const auto& m : grid.modes)
        z.push_back(std::sqrt(m.weight) * m.omega * coupling_v(x, m.k, cfg));
    return z;
}

SparseOperator van_hove_hamiltonian(const Configuration& x, const ModeGrid& grid,
                                    const FockBasis& basis, const SystemConfig& cfg) {
    std::vector<double> omega;
    omega.reserve(grid.size());
    for (const auto& m : grid.modes) omega.push_back(m.omega);
    return van_hove_hamiltonian(fibered_coupling(x, grid, cfg), omega, basis);
}

double discrete_alpha(const std::vector<cd>& z, const std::vector<double>& omega) {
    if (z.size() != omega.size())
        throw std::invalid_argument("discrete_alpha: size mismatch");
    double sum = 0.0;
    for (std::size_t m = 0; m < z.size(); ++m) sum += std::norm(z[m]) / omega[m];
    return -0.5 * sum;
}

DressingOperator displacement_from_amplitudes(const std::vector<cd>& u, const FockBasis& basis) {
    // i Phi(i u) = (a(u) - a(u)^dag)/sqrt(2), anti-Hermitian by construction.
    const SparseOperator a = annihilation_op(u, basis);
    const SparseOperator gen =
        SparseOperator::add(a, a.adjoint(), 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0));
    DressingOperator out;
    out.u = gen.dense().exp();
    const Eigen::MatrixXcd defect =
        out.u * out.u.adjoint() - Eigen::MatrixXcd::Identity(out.u.rows(), out.u.cols());
    out.unitarity_defect = defect.cwiseAbs().maxCoeff();
    if (out.unitarity_defect > 1e-6)
        throw std::runtime_error("displacement: unitarity defect > 1e-6, raise n_max");
    out.coherent.alpha.reserve(u.size());
    for (const cd& um : u) out.coherent.alpha.push_back(-um / std::sqrt(2.0));
    return out;
}

DressingOperator dressing_displacement(const Configuration& x, const ModeGrid& grid,
                                       const FockBasis& basis, const SystemConfig& cfg) {
    if (!(cfg.form_factor.sigma_ir > 0.0))
        throw std::invalid_argument(
            "dressing_displacement: requires sigma > 0 (IR-regular coupling)");
    std::vector<cd> u;
    u.reserve(grid.size());
    for (const auto& m : grid.modes)
        u.push_back(std::sqrt(m.weight) * coupling_v(x, m.k, cfg));
    return displacement_from_amplitudes(u, basis);
}

} // namespace nelson
