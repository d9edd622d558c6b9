// Test-only brute-force quadrature oracles. These deliberately avoid the
// closed forms and angular reductions used by the library: integrals over the
// momentum shell are evaluated as iterated Cartesian integrals with exact
// sphere breakpoints, so they exercise the defining k-integrals directly.
#ifndef NELSON_TESTS_ORACLE_QUADRATURE_HPP
#define NELSON_TESTS_ORACLE_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "nelson/quadrature.hpp"
#include "nelson/vec3.hpp"

namespace nelson::test_oracle {

// Integrand values collected in one pass: e^{i k.r}/k^2 and the six
// independent components of e^{i k.r} kappa_a kappa_b / k^2
// (xx, yy, zz, xy, xz, yz).
struct ShellIntegrals {
    std::complex<double> scalar{0.0, 0.0};
    std::array<std::complex<double>, 6> tensor{};
};

namespace detail {

// Composite Gauss-Legendre along kz over [a, b] with oscillation-aware
// segmentation for the phase e^{i kz r_z}.
inline void kz_integral(double kx, double ky, double a, double b, const Vec3& r,
                        ShellIntegrals& acc, double weight_xy) {
    if (!(b > a)) return;
    const double osc = std::abs(r.z) * (b - a) / std::numbers::pi;
    const std::size_t segs = 1 + static_cast<std::size_t>(osc);
    Quadrature1D q = composite_gauss_legendre(12, segs, a, b);
    const double s2 = kx * kx + ky * ky;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double kz = q.nodes[i];
        const double k2 = s2 + kz * kz;
        if (k2 == 0.0) continue;
        const double phase = kx * r.x + ky * r.y + kz * r.z;
        // regularized phase factor e^{i k.r} - 1 - i k.r (bounded at k = 0)
        const std::complex<double> e(std::cos(phase) - 1.0, std::sin(phase) - phase);
        const std::complex<double> base = e / k2 * (q.weights[i] * weight_xy);
        acc.scalar += base;
        acc.tensor[0] += base * (kx * kx / k2);
        acc.tensor[1] += base * (ky * ky / k2);
        acc.tensor[2] += base * (kz * kz / k2);
        acc.tensor[3] += base * (kx * ky / k2);
        acc.tensor[4] += base * (kx * kz / k2);
        acc.tensor[5] += base * (ky * kz / k2);
    }
}

// Iterated integral over the full ball |k| < R.
inline ShellIntegrals ball_integral(double R, const Vec3& r, std::size_t n_trans) {
    ShellIntegrals acc;
    if (!(R > 0.0)) return acc;
    // kx = R sin(alpha), ky = rho sin(beta): the sin substitutions remove the
    // square-root rim singularities of the iterated bounds.
    Quadrature1D qa = gauss_legendre(n_trans, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    for (std::size_t ia = 0; ia < qa.size(); ++ia) {
        const double alpha = qa.nodes[ia];
        const double kx = R * std::sin(alpha);
        const double wx = qa.weights[ia] * R * std::cos(alpha);
        const double rho = R * std::cos(alpha);
        Quadrature1D qb =
            gauss_legendre(n_trans, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
        for (std::size_t ib = 0; ib < qb.size(); ++ib) {
            const double beta = qb.nodes[ib];
            const double ky = rho * std::sin(beta);
            const double wy = qb.weights[ib] * rho * std::cos(beta);
            const double h2 = R * R - kx * kx - ky * ky;
            if (h2 <= 0.0) continue;
            const double h = std::sqrt(h2);
            kz_integral(kx, ky, -h, h, r, acc, wx * wy);
        }
    }
    return acc;
}

} // namespace detail

// \int_{sigma < |k| < Lambda} dk (2 pi)^{-3} e^{i k.r} {1, kappa kappa^T} / k^2
// as iterated Cartesian quadrature, via the exact decomposition
//   e^{ikr} = [e^{ikr} - 1 - i k.r] + 1 + i k.r:
// the first part is bounded at the origin and integrated numerically, the
// constant part integrates analytically over the shell, and the linear part
// vanishes by antisymmetry.
inline ShellIntegrals shell_integral_cartesian(const Vec3& r, double sigma, double lambda,
                                               std::size_t n_trans = 48) {
    ShellIntegrals out;
    ShellIntegrals big = detail::ball_integral(lambda, r, n_trans);
    ShellIntegrals small = detail::ball_integral(sigma, r, n_trans);
    const double norm = 1.0 / std::pow(2.0 * std::numbers::pi, 3);
    out.scalar = (big.scalar - small.scalar) * norm;
    for (int i = 0; i < 6; ++i) out.tensor[i] = (big.tensor[i] - small.tensor[i]) * norm;
    const double shell = 4.0 * std::numbers::pi * (lambda - sigma) * norm;
    out.scalar += shell;
    out.tensor[0] += shell / 3.0;
    out.tensor[1] += shell / 3.0;
    out.tensor[2] += shell / 3.0;
    return out;
}

// Independent radial quadrature of V(r)/( -e_i e_j ) =
// (2 pi^2 r)^{-1} \int_{sigma r}^{lambda r} sin(u)/u du without Si.
inline double pair_potential_radial_oracle(double r, double sigma, double lambda,
                                           std::size_t n = 20) {
    const double a = sigma * r, b = lambda * r;
    const std::size_t segs = 1 + static_cast<std::size_t>((b - a) / std::numbers::pi);
    Quadrature1D q = composite_gauss_legendre(n, segs, a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double u = q.nodes[i];
        acc += q.weights[i] * (u == 0.0 ? 1.0 : std::sin(u) / u);
    }
    return acc / (2.0 * std::numbers::pi * std::numbers::pi * r);
}

} // namespace nelson::test_oracle

#endif
