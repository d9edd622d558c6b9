#ifndef NELSON_QUADRATURE_HPP
#define NELSON_QUADRATURE_HPP

#include <cstddef>
#include <vector>

#include "nelson/form_factor.hpp"
#include "nelson/vec3.hpp"

namespace nelson {

struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre rule on [-1, 1] (Newton on the Legendre recurrence).
Quadrature1D gauss_legendre(std::size_t n);

// Gauss-Legendre rule mapped to [a, b].
Quadrature1D gauss_legendre(std::size_t n, double a, double b);

// Composite Gauss-Legendre: [a, b] split into `segments` equal pieces with an
// `n`-point rule on each. Used for oscillatory radial integrands.
Quadrature1D composite_gauss_legendre(std::size_t n, std::size_t segments, double a, double b);

// Quadrature on the unit sphere: Gauss-Legendre in cos(theta) times a uniform
// azimuthal grid ("Lebedev-style" product rule). Weights sum to 4 pi; exact
// for spherical harmonics up to degree 2*n_polar - 1. The grid is symmetric
// under k -> -k when n_polar and n_azimuth are even.
struct SphereGrid {
    std::vector<Vec3> directions;
    std::vector<double> weights;
    std::size_t size() const { return directions.size(); }
};

SphereGrid sphere_grid(std::size_t n_polar, std::size_t n_azimuth);

// Tensor quadrature over the momentum shell sigma < |k| < Lambda:
// radial Gauss-Legendre times a SphereGrid, with the |k|^2 measure folded
// into the weights so that sum_m w_m f(k_m) ~ \int dk f(k).
struct ModeQuadrature {
    std::vector<Vec3> k;
    std::vector<double> weight;
    std::vector<double> omega;   // |k|

    std::size_t size() const { return k.size(); }
};

ModeQuadrature shell_quadrature(const FormFactor& ff, std::size_t n_radial,
                                std::size_t n_polar, std::size_t n_azimuth);

// Minimum angular exactness degree required by the radiation mode integrals.
bool angular_degree_at_least(std::size_t n_polar, std::size_t degree);

} // namespace nelson

#endif
