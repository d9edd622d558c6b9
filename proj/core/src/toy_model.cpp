#include "nelson/toy_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nelson/krylov.hpp"
#include "nelson/parallel.hpp"

namespace nelson {

using cd = std::complex<double>;

void ToyModelSpec::validate() const {
    if (n_x == 0 || (n_x & (n_x - 1)) != 0)
        throw std::invalid_argument("ToyModelSpec: n_x must be a power of two");
    if (!(length > 0.0)) throw std::invalid_argument("ToyModelSpec: length must be > 0");
    if (!(sigma_ir > 0.0) || !(lambda_uv > sigma_ir))
        throw std::invalid_argument("ToyModelSpec: need 0 < sigma_ir < lambda_uv");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("ToyModelSpec: epsilon in (0, 1)");
    if (n_modes == 0) throw std::invalid_argument("ToyModelSpec: n_modes >= 1");
    if (!(packet_width > 0.0)) throw std::invalid_argument("ToyModelSpec: packet_width > 0");
}

ToyModel::ToyModel(const ToyModelSpec& spec)
    : spec_(spec),
      modes_(mode_grid_log_1d(spec.sigma_ir, spec.lambda_uv, spec.n_modes)),
      basis_(spec.n_modes, spec.n_max, spec.m_max) {
    spec_.validate();
    if (spec_.n_x * basis_.dim() > spec_.dim_budget)
        throw std::invalid_argument("ToyModel: dimension budget exceeded");
    build_hamiltonian();
    build_packet();
}

double ToyModel::grid_point(std::size_t i) const {
    const double dx = spec_.length / static_cast<double>(spec_.n_x);
    return -0.5 * spec_.length + dx * static_cast<double>(i);
}

std::vector<double> ToyModel::kinetic_eigenvalues() const {
    const std::size_t n = spec_.n_x;
    std::vector<double> out(n);
    for (std::size_t f = 0; f < n; ++f) {
        const double fr = static_cast<double>(f < n / 2 ? f : static_cast<long long>(f) -
                                                                static_cast<long long>(n));
        const double kappa = 2.0 * std::numbers::pi * fr / spec_.length;
        out[f] = 0.5 * spec_.epsilon * spec_.epsilon * kappa * kappa;
    }
    return out;
}

std::vector<cd> ToyModel::displacement_amplitudes(std::size_t i) const {
    const double x = grid_point(i);
    std::vector<cd> u;
    u.reserve(modes_.size());
    for (const auto& m : modes_.modes) {
        const double k = m.k.x;
        const double amp = spec_.charge * spec_.coupling_scale * std::sqrt(m.weight / k);
        u.push_back(amp * std::exp(cd(0.0, k * x)));
    }
    return u;
}

void ToyModel::build_hamiltonian() {
    const std::size_t nx = spec_.n_x;
    const std::size_t df = basis_.dim();
    const std::vector<double> kin = kinetic_eigenvalues();

    // Circulant first row of the spectrally exact kinetic operator.
    std::vector<double> row(nx, 0.0);
    for (std::size_t d = 0; d < nx; ++d) {
        double acc = 0.0;
        for (std::size_t f = 0; f < nx; ++f)
            acc += kin[f] * std::cos(2.0 * std::numbers::pi * static_cast<double>(f) *
                                     static_cast<double>(d) / static_cast<double>(nx));
        row[d] = acc / static_cast<double>(nx);
    }

    std::vector<SparseOperator::Triplet> trip;
    trip.reserve(nx * nx * df / 8);

    // Kinetic: circulant over x, identity over the fiber. Entries below the
    // exactness floor are dropped to keep the matrix sparse.
    double row_max = 0.0;
    for (double v : row) row_max = std::max(row_max, std::abs(v));
    const double floor = 1e-15 * row_max;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j) {
            const double v = row[(j + nx - i) % nx];
            if (std::abs(v) < floor) continue;
            for (std::size_t f = 0; f < df; ++f)
                trip.emplace_back(i * df + f, j * df + f, cd(v, 0.0));
        }

    // Field energy: dGamma(omega), diagonal.
    std::vector<double> omega;
    omega.reserve(modes_.size());
    for (const auto& m : modes_.modes) omega.push_back(m.omega);
    const SparseOperator dgamma = second_quantization(omega, basis_);
    for (std::size_t r = 0; r < df; ++r)
        for (std::size_t p = dgamma.row_ptr()[r]; p < dgamma.row_ptr()[r + 1]; ++p)
            for (std::size_t i = 0; i < nx; ++i)
                trip.emplace_back(i * df + r, i * df + dgamma.cols()[p], dgamma.values()[p]);

    // Coupling: x-diagonal fiber field operator Phi(z(x_i)) with
    // z_m(x) = omega_m u_m(x).
    for (std::size_t i = 0; i < nx; ++i) {
        std::vector<cd> z = displacement_amplitudes(i);
        for (std::size_t m = 0; m < z.size(); ++m) z[m] *= modes_.modes[m].omega;
        const SparseOperator phi = field_op(z, basis_);
        for (std::size_t r = 0; r < df; ++r)
            for (std::size_t p = phi.row_ptr()[r]; p < phi.row_ptr()[r + 1]; ++p)
                trip.emplace_back(i * df + r, i * df + phi.cols()[p], phi.values()[p]);
    }

    h_ = SparseOperator(nx * df, std::move(trip));
}

void ToyModel::build_packet() {
    const std::size_t nx = spec_.n_x;
    const double L = spec_.length;
    // Snap the carrier to a grid momentum so the periodic phase is seamless.
    const double k_target = spec_.momentum_scale / spec_.epsilon;
    const double k0 =
        2.0 * std::numbers::pi * std::round(k_target * L / (2.0 * std::numbers::pi)) / L;
    packet_.resize(nx);
    double norm2_acc = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = grid_point(i);
        // minimum-image displacement from the packet center
        double d = x - spec_.packet_center;
        d -= L * std::round(d / L);
        const double env = std::exp(-d * d / (4.0 * spec_.packet_width * spec_.packet_width));
        packet_[i] = env * std::exp(cd(0.0, k0 * x));
        norm2_acc += env * env;
    }
    const double inv = 1.0 / std::sqrt(norm2_acc);
    for (auto& c : packet_) c *= inv;
}

Eigen::VectorXcd ToyModel::initial_bare() const {
    const std::size_t df = basis_.dim();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < spec_.n_x; ++i)
        psi[static_cast<Eigen::Index>(i * df)] = packet_[i]; // vacuum is basis state 0
    return psi;
}

Eigen::VectorXcd ToyModel::initial_dressed() const {
    const std::size_t df = basis_.dim();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < spec_.n_x; ++i) {
        const DressingOperator v = displacement_from_amplitudes(displacement_amplitudes(i), basis_);
        const Eigen::VectorXcd omega_fiber = v.u.col(0); // V(x)|vacuum>
        for (std::size_t f = 0; f < df; ++f)
            psi[static_cast<Eigen::Index>(i * df + f)] =
                packet_[i] * omega_fiber[static_cast<Eigen::Index>(f)];
    }
    psi.normalize();
    return psi;
}

SparseOperator build_toy_hamiltonian(const ToyModelSpec& spec) {
    return ToyModel(spec).hamiltonian();
}

Eigen::VectorXcd DressedProjector::apply(const Eigen::VectorXcd& psi) const {
    const std::size_t nx = fiber_blocks.size();
    const std::size_t df = static_cast<std::size_t>(fiber_blocks.front().rows());
    if (static_cast<std::size_t>(psi.size()) != nx * df)
        throw std::invalid_argument("DressedProjector::apply: dimension mismatch");
    Eigen::VectorXcd out(psi.size());
    for (std::size_t i = 0; i < nx; ++i)
        out.segment(static_cast<Eigen::Index>(i * df), static_cast<Eigen::Index>(df)) =
            fiber_blocks[i] *
            psi.segment(static_cast<Eigen::Index>(i * df), static_cast<Eigen::Index>(df));
    return out;
}

double DressedProjector::fiber_rank(std::size_t i) const {
    return fiber_blocks.at(i).trace().real();
}

DressedProjector dressed_projector(const ToyModel& model, std::size_t sector) {
    const FockBasis& basis = model.basis();
    const std::size_t df = basis.dim();
    Eigen::MatrixXcd q_m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(df),
                                                  static_cast<Eigen::Index>(df));
    for (std::size_t f = 0; f < df; ++f)
        if (basis.total_occupation(f) == static_cast<int>(sector))
            q_m(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(f)) = 1.0;

    DressedProjector proj;
    proj.sector = sector;
    proj.fiber_blocks.resize(model.spec().n_x);
    parallel_for(model.spec().n_x, [&](std::size_t i) {
        const DressingOperator v =
            displacement_from_amplitudes(model.displacement_amplitudes(i), basis);
        proj.fiber_blocks[i] = v.u * q_m * v.u.adjoint();
    });
    return proj;
}

std::vector<LeakageRow> leakage_scan(const ToyModelSpec& base,
                                     const std::vector<double>& epsilons,
                                     const std::vector<double>& sigmas, double t_final,
                                     std::size_t n_times, double krylov_tol) {
    if (epsilons.empty() || sigmas.empty() || n_times == 0)
        throw std::invalid_argument("leakage_scan: empty scan axes");
    std::vector<LeakageRow> rows(epsilons.size() * sigmas.size() * n_times);

    struct Cell {
        std::size_t e_idx, s_idx;
    };
    std::vector<Cell> cells;
    for (std::size_t e = 0; e < epsilons.size(); ++e)
        for (std::size_t s = 0; s < sigmas.size(); ++s) cells.push_back({e, s});

    parallel_for(cells.size(), [&](std::size_t c) {
        const auto [e_idx, s_idx] = cells[c];
        ToyModelSpec spec = base;
        spec.epsilon = epsilons[e_idx];
        spec.sigma_ir = sigmas[s_idx];
        const ToyModel model(spec);
        const DressedProjector p0 = dressed_projector(model, 0);
        const std::size_t df = model.fiber_dim();

        Eigen::VectorXcd psi_d = model.initial_dressed();
        Eigen::VectorXcd psi_b = model.initial_bare();

        const double dt_macro = t_final / static_cast<double>(n_times);
        for (std::size_t it = 0; it < n_times; ++it) {
            const double tau = dt_macro / spec.epsilon; // microscopic step
            psi_d = krylov_propagate(model.hamiltonian(), psi_d, tau, krylov_tol);
            psi_b = krylov_propagate(model.hamiltonian(), psi_b, tau, krylov_tol);

            const Eigen::VectorXcd proj_d = p0.apply(psi_d);
            const double leak_d = (psi_d - proj_d).norm();
            double bare_inside = 0.0;
            for (std::size_t i = 0; i < spec.n_x; ++i)
                bare_inside += std::norm(psi_b[static_cast<Eigen::Index>(i * df)]);
            const double leak_b = std::sqrt(std::max(0.0, psi_b.squaredNorm() - bare_inside));

            LeakageRow row;
            row.epsilon = spec.epsilon;
            row.sigma = spec.sigma_ir;
            row.t = dt_macro * static_cast<double>(it + 1);
            row.leakage_dressed = leak_d;
            row.leakage_bare = leak_b;
            row.norm_defect = std::abs(psi_d.norm() - 1.0);
            rows[(e_idx * sigmas.size() + s_idx) * n_times + it] = row;
        }
    });
    return rows;
}

} // namespace nelson
