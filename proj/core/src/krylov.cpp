#include "nelson/krylov.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace nelson {

namespace {

using cd = std::complex<double>;

void require_hermitian(const SparseOperator& h, const char* who) {
    const double defect = h.hermiticity_defect();
    if (defect > 1e-12 * std::max(1.0, h.norm_bound()))
        throw std::invalid_argument(std::string(who) + ": operator is not Hermitian");
}

bool is_diagonal(const SparseOperator& h) {
    for (std::size_t r = 0; r < h.dim(); ++r)
        for (std::size_t p = h.row_ptr()[r]; p < h.row_ptr()[r + 1]; ++p)
            if (h.cols()[p] != r) return false;
    return true;
}

Eigen::VectorXcd deterministic_start(std::size_t dim) {
    std::mt19937_64 rng(0x6e656c736f6eull);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = (static_cast<double>(rng()) + 0.5) / 18446744073709551616.0;
        const double b = (static_cast<double>(rng()) + 0.5) / 18446744073709551616.0;
        v[i] = cd(a - 0.5, b - 0.5);
    }
    v.normalize();
    return v;
}

struct Tridiagonal {
    std::vector<double> alpha;
    std::vector<double> beta; // beta[j] couples j and j+1
};

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_tridiagonal(const Tridiagonal& t,
                                                                 std::size_t m) {
    Eigen::MatrixXd tm = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                               static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        tm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = t.alpha[i];
        if (i + 1 < m) {
            tm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = t.beta[i];
            tm(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = t.beta[i];
        }
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(tm);
}

} // namespace

LanczosResult lanczos_ground_state(const SparseOperator& h, double tol, int max_iter) {
    if (h.dim() == 0) throw std::invalid_argument("lanczos_ground_state: empty operator");
    require_hermitian(h, "lanczos_ground_state");
    const std::size_t dim = h.dim();
    const int m_cap = static_cast<int>(std::min<std::size_t>(dim, max_iter));

    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(m_cap);
    basis.push_back(deterministic_start(dim));
    Tridiagonal tri;
    Eigen::VectorXcd w(static_cast<Eigen::Index>(dim));
    double best_residual = std::numeric_limits<double>::infinity();

    for (int j = 0; j < m_cap; ++j) {
        h.apply(basis[j], w);
        const double alpha = std::real(basis[j].dot(w));
        tri.alpha.push_back(alpha);
        w -= alpha * basis[j];
        if (j > 0) w -= tri.beta[j - 1] * basis[j - 1];
        for (int pass = 0; pass < 2; ++pass) // full reorthogonalization
            for (const auto& v : basis) w -= v.dot(w) * v;

        const std::size_t m = tri.alpha.size();
        auto es = solve_tridiagonal(tri, m);
        const double theta = es.eigenvalues()(0);
        const double beta = w.norm();
        const double ritz_residual = beta * std::abs(es.eigenvectors()(static_cast<Eigen::Index>(m - 1), 0));
        best_residual = std::min(best_residual, ritz_residual);

        const bool breakdown = beta < 1e-14 * std::max(1.0, h.norm_bound());
        if (ritz_residual <= tol || breakdown || static_cast<std::size_t>(j) + 1 == dim ||
            j + 1 == m_cap) {
            Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < m; ++i)
                ground += es.eigenvectors()(static_cast<Eigen::Index>(i), 0) * basis[i];
            ground.normalize();
            Eigen::VectorXcd hv = h.apply(ground);
            const double energy = std::real(ground.dot(hv));
            const double residual = (hv - energy * ground).norm();
            if (residual <= tol || breakdown || static_cast<std::size_t>(j) + 1 == dim) {
                if (residual > tol && !(residual <= 10 * tol))
                    throw std::runtime_error(
                        "lanczos_ground_state: stagnated, best residual " + std::to_string(residual));
                return {energy, std::move(ground), residual, j + 1};
            }
            if (j + 1 == m_cap)
                throw std::runtime_error("lanczos_ground_state: no convergence after " +
                                         std::to_string(max_iter) + " iterations, best residual " +
                                         std::to_string(best_residual));
        }
        basis.push_back(w / beta);
        tri.beta.push_back(beta);
    }
    throw std::runtime_error("lanczos_ground_state: no convergence, best residual " +
                             std::to_string(best_residual));
}

Eigen::VectorXcd krylov_propagate(const SparseOperator& h, const Eigen::VectorXcd& psi, double t,
                                  double tol, int krylov_dim) {
    if (static_cast<std::size_t>(psi.size()) != h.dim())
        throw std::invalid_argument("krylov_propagate: dimension mismatch");
    if (t == 0.0) return psi;
    require_hermitian(h, "krylov_propagate");

    if (is_diagonal(h)) {
        Eigen::VectorXcd out(psi.size());
        for (std::size_t r = 0; r < h.dim(); ++r) {
            cd d = 0.0;
            for (std::size_t p = h.row_ptr()[r]; p < h.row_ptr()[r + 1]; ++p) d = h.values()[p];
            out[static_cast<Eigen::Index>(r)] =
                std::exp(cd(0.0, -t * d.real())) * psi[static_cast<Eigen::Index>(r)];
        }
        return out;
    }

    const std::size_t dim = h.dim();
    const std::size_t m_max = std::min<std::size_t>(dim, std::max(2, krylov_dim));
    Eigen::VectorXcd cur = psi;
    double remaining = t;
    const double direction = (t > 0.0) ? 1.0 : -1.0;
    const double norm_bound = std::max(h.norm_bound(), 1e-30);
    double dt = direction * std::min(std::abs(t), 2.0 * static_cast<double>(m_max) / norm_bound);
    const double tol_rate = tol / std::abs(t); // error budget per unit time

    int guard = 0;
    while (std::abs(remaining) > 1e-14 * std::abs(t)) {
        if (++guard > 1000000)
            throw std::runtime_error("krylov_propagate: step-size collapse");
        const double nrm = cur.norm();
        if (nrm == 0.0) return cur;

        // Lanczos basis from the current state.
        std::vector<Eigen::VectorXcd> basis;
        basis.reserve(m_max);
        basis.push_back(cur / nrm);
        Tridiagonal tri;
        Eigen::VectorXcd w(static_cast<Eigen::Index>(dim));
        double beta_last = 0.0;
        std::size_t m = 0;
        bool breakdown = false;
        for (std::size_t j = 0; j < m_max; ++j) {
            h.apply(basis[j], w);
            const double alpha = std::real(basis[j].dot(w));
            tri.alpha.push_back(alpha);
            w -= alpha * basis[j];
            if (j > 0) w -= tri.beta[j - 1] * basis[j - 1];
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& v : basis) w -= v.dot(w) * v;
            const double beta = w.norm();
            m = j + 1;
            if (beta < 1e-14 * std::max(1.0, norm_bound) || m == dim) {
                breakdown = true;
                beta_last = 0.0;
                break;
            }
            beta_last = beta;
            if (j + 1 < m_max) {
                basis.push_back(w / beta);
                tri.beta.push_back(beta);
            }
        }

        auto es = solve_tridiagonal(tri, m);
        const Eigen::MatrixXd& q = es.eigenvectors();
        const Eigen::VectorXd theta = es.eigenvalues();

        double dt_try = (std::abs(dt) > std::abs(remaining)) ? remaining : dt;
        for (;;) {
            Eigen::VectorXcd small(static_cast<Eigen::Index>(m));
            for (std::size_t i = 0; i < m; ++i) {
                cd acc = 0.0;
                for (std::size_t l = 0; l < m; ++l)
                    acc += q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) *
                           std::exp(cd(0.0, -dt_try * theta(static_cast<Eigen::Index>(l)))) *
                           q(0, static_cast<Eigen::Index>(l));
                small[static_cast<Eigen::Index>(i)] = acc;
            }
            const double err =
                breakdown ? 0.0
                          : beta_last * std::abs(small[static_cast<Eigen::Index>(m - 1)]) *
                                std::abs(dt_try);
            if (err <= tol_rate * std::abs(dt_try) || breakdown) {
                Eigen::VectorXcd next = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
                for (std::size_t i = 0; i < m; ++i)
                    next += small[static_cast<Eigen::Index>(i)] * basis[i];
                cur = nrm * next;
                remaining -= dt_try;
                // gentle growth for the next step
                dt = dt_try * 1.2;
                break;
            }
            dt_try *= 0.5;
            if (std::abs(dt_try) < 1e-12 * std::abs(t))
                throw std::runtime_error("krylov_propagate: step-size collapse");
        }
    }
    return cur;
}

} // namespace nelson
