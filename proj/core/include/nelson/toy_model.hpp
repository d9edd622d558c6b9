#ifndef NELSON_TOY_MODEL_HPP
#define NELSON_TOY_MODEL_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nelson/fock.hpp"
#include "nelson/fock_ops.hpp"
#include "nelson/sparse.hpp"

namespace nelson {

// 1D particle on a periodic grid coupled to a few field modes. Couplings are
// the 1D analogue v(x, k) = e g e^{i k x} / sqrt(|k|), which reproduces the
// logarithmic sigma-divergence of the displacement norm of the 3D model.
struct ToyModelSpec {
    double length = 16.0;        // periodic box
    std::size_t n_x = 256;       // grid points, power of two
    std::size_t n_modes = 3;     // 1D modes, log-spaced in [sigma, lambda]
    double lambda_uv = 2.0;
    double sigma_ir = 1e-2;
    double charge = 1.0;
    double coupling_scale = 0.35;
    double epsilon = 0.1;
    std::size_t n_max = 2;       // per-mode occupation cap
    std::size_t m_max = 2;       // total occupation cap
    std::size_t dim_budget = 1u << 16;

    // Initial wavepacket: Gaussian envelope at packet_center with width
    // packet_width and carrier momentum momentum_scale / epsilon (bounded
    // kinetic energy uniformly in epsilon).
    double packet_center = -4.0;
    double packet_width = 1.0;
    double momentum_scale = 1.0;

    void validate() const;
};

// Grid, mode set, Fock basis and the assembled Hamiltonian of one toy cell.
class ToyModel {
public:
    explicit ToyModel(const ToyModelSpec& spec);

    const ToyModelSpec& spec() const { return spec_; }
    const ModeGrid& modes() const { return modes_; }
    const FockBasis& basis() const { return basis_; }
    std::size_t fiber_dim() const { return basis_.dim(); }
    std::size_t dim() const { return spec_.n_x * basis_.dim(); }

    double grid_point(std::size_t i) const;

    // H = (eps^2 p^2/2) (x) 1 + 1 (x) dGamma(omega) + Phi(z(x)), Hermitian,
    // kinetic term assembled spectrally (exact circulant of eps^2 k^2 / 2).
    const SparseOperator& hamiltonian() const { return h_; }

    // Free-particle kinetic eigenvalues eps^2 (2 pi n / L)^2 / 2.
    std::vector<double> kinetic_eigenvalues() const;

    // Displacement amplitudes u_m(x) at grid point i.
    std::vector<std::complex<double>> displacement_amplitudes(std::size_t i) const;

    // Gaussian wavepacket (periodized, carrier snapped to the grid momenta)
    // tensored with the bare vacuum or with the fiberwise dressed vacuum.
    Eigen::VectorXcd initial_bare() const;
    Eigen::VectorXcd initial_dressed() const;

private:
    ToyModelSpec spec_;
    ModeGrid modes_;
    FockBasis basis_;
    SparseOperator h_;
    std::vector<std::complex<double>> packet_; // normalized particle packet

    void build_hamiltonian();
    void build_packet();
};

SparseOperator build_toy_hamiltonian(const ToyModelSpec& spec);

// x-fibered dressed projector pi^M(x) = V(x) Q_M V(x)^dag assembled as dense
// fiber blocks; block-diagonal in x.
struct DressedProjector {
    std::size_t sector = 0;
    std::vector<Eigen::MatrixXcd> fiber_blocks; // one per grid point

    Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const;
    double fiber_rank(std::size_t i) const; // trace of the block
};

DressedProjector dressed_projector(const ToyModel& model, std::size_t sector);

struct LeakageRow {
    double epsilon;
    double sigma;
    double t;
    double leakage_dressed;
    double leakage_bare;
    double norm_defect;
};

// For each (epsilon, sigma) cell: propagate the dressed and bare initial
// states with exp(-i t H / eps) and record the leakage out of the dressed /
// bare vacuum sectors at n_times equally spaced macroscopic times.
std::vector<LeakageRow> leakage_scan(const ToyModelSpec& base,
                                     const std::vector<double>& epsilons,
                                     const std::vector<double>& sigmas, double t_final,
                                     std::size_t n_times, double krylov_tol = 1e-9);

} // namespace nelson

#endif
