#ifndef NELSON_DARWIN_HPP
#define NELSON_DARWIN_HPP

#include <array>

#include "nelson/system.hpp"

namespace nelson {

// Symmetric 3x3 tensor
//   T_ab(r) = Re \int_{sigma<|k|<Lambda} dk (2pi)^{-3} e^{i k.r} k_a k_b / |k|^4,
// reduced analytically to T = A(|r|) I + B(|r|) rhat rhat^T. Rotation
// covariant, even in r, with trace tr T(r) = -V_ij(r) / (e_i e_j).
struct DarwinTensor {
    std::array<std::array<double, 3>, 3> value{};

    double trace() const { return value[0][0] + value[1][1] + value[2][2]; }
};

// Isotropic/longitudinal radial coefficients and their r-derivatives.
struct DarwinRadial {
    double a = 0.0;       // coefficient of the identity
    double b = 0.0;       // coefficient of rhat rhat^T
    double da = 0.0;      // dA/dr
    double db = 0.0;      // dB/dr
};

DarwinRadial darwin_radial(double r, const FormFactor& ff);

DarwinTensor darwin_tensor(const Vec3& r, const FormFactor& ff);

// Quadratic form u^T T(r) v.
double darwin_quadratic(const Vec3& r, const Vec3& u, const Vec3& v, const FormFactor& ff);

// Gradient of the quadratic form with respect to r at fixed u, v.
Vec3 darwin_quadratic_grad(const Vec3& r, const Vec3& u, const Vec3& v, const FormFactor& ff);

// Velocity-dependent pair energy at the classical symbol level:
//   D(x, p) = -(eps^2/2) sum_{l != j} e_l e_j p_l . T(x_j - x_l) p_j.
double darwin_energy(const PhaseSpacePoint& pt, const SystemConfig& cfg);

} // namespace nelson

#endif
