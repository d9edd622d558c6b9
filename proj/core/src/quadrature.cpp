#include "nelson/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nelson {

Quadrature1D gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Tricomi-style initial guess, then Newton.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) q.nodes[n / 2] = 0.0;
    return q;
}

Quadrature1D gauss_legendre(std::size_t n, double a, double b) {
    Quadrature1D q = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
        q.nodes[i] = mid + half * q.nodes[i];
        q.weights[i] *= half;
    }
    return q;
}

Quadrature1D composite_gauss_legendre(std::size_t n, std::size_t segments, double a, double b) {
    if (segments == 0) throw std::invalid_argument("composite_gauss_legendre: segments >= 1");
    Quadrature1D base = gauss_legendre(n);
    Quadrature1D q;
    q.nodes.reserve(n * segments);
    q.weights.reserve(n * segments);
    const double h = (b - a) / static_cast<double>(segments);
    for (std::size_t s = 0; s < segments; ++s) {
        const double lo = a + h * static_cast<double>(s);
        const double mid = lo + 0.5 * h, half = 0.5 * h;
        for (std::size_t i = 0; i < n; ++i) {
            q.nodes.push_back(mid + half * base.nodes[i]);
            q.weights.push_back(half * base.weights[i]);
        }
    }
    return q;
}

SphereGrid sphere_grid(std::size_t n_polar, std::size_t n_azimuth) {
    if (n_polar == 0 || n_azimuth == 0)
        throw std::invalid_argument("sphere_grid: need n_polar, n_azimuth >= 1");
    Quadrature1D polar = gauss_legendre(n_polar); // nodes are cos(theta)
    SphereGrid g;
    g.directions.reserve(n_polar * n_azimuth);
    g.weights.reserve(n_polar * n_azimuth);
    const double wphi = 2.0 * std::numbers::pi / static_cast<double>(n_azimuth);
    for (std::size_t i = 0; i < n_polar; ++i) {
        const double c = polar.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (std::size_t j = 0; j < n_azimuth; ++j) {
            const double phi = wphi * (static_cast<double>(j) + 0.5);
            g.directions.push_back({s * std::cos(phi), s * std::sin(phi), c});
            g.weights.push_back(polar.weights[i] * wphi);
        }
    }
    return g;
}

ModeQuadrature shell_quadrature(const FormFactor& ff, std::size_t n_radial,
                                std::size_t n_polar, std::size_t n_azimuth) {
    Quadrature1D radial = gauss_legendre(n_radial, ff.sigma_ir, ff.lambda_uv);
    SphereGrid ang = sphere_grid(n_polar, n_azimuth);
    ModeQuadrature q;
    const std::size_t total = radial.size() * ang.size();
    q.k.reserve(total);
    q.weight.reserve(total);
    q.omega.reserve(total);
    for (std::size_t r = 0; r < radial.size(); ++r) {
        const double kr = radial.nodes[r];
        const double wr = radial.weights[r] * kr * kr;
        for (std::size_t a = 0; a < ang.size(); ++a) {
            q.k.push_back(kr * ang.directions[a]);
            q.weight.push_back(wr * ang.weights[a]);
            q.omega.push_back(kr);
        }
    }
    return q;
}

bool angular_degree_at_least(std::size_t n_polar, std::size_t degree) {
    return 2 * n_polar >= degree + 1;
}

} // namespace nelson
