#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "nelson/darwin.hpp"
#include "nelson/sine_integral.hpp"
#include "nelson/smeared_coulomb.hpp"
#include "oracle_quadrature.hpp"

using namespace nelson;

namespace {

constexpr double kPi = std::numbers::pi;

SystemConfig two_particle_cfg(double e1, double e2, double lambda, double sigma,
                              double eps = 0.1) {
    return SystemConfig({{e1}, {e2}}, FormFactor(lambda, sigma), eps);
}

std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240517);
    return gen;
}

double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng());
}

Vec3 random_vec(double scale) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

// Rotation matrix from an axis-angle pair (Rodrigues).
std::array<std::array<double, 3>, 3> rotation_matrix(const Vec3& axis_raw, double angle) {
    Vec3 u = (1.0 / norm(axis_raw)) * axis_raw;
    const double c = std::cos(angle), s = std::sin(angle);
    std::array<std::array<double, 3>, 3> rot{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) rot[a][b] = (a == b ? c : 0.0) + (1.0 - c) * u[a] * u[b];
    rot[0][1] -= s * u.z;
    rot[1][0] += s * u.z;
    rot[0][2] += s * u.y;
    rot[2][0] -= s * u.y;
    rot[1][2] -= s * u.x;
    rot[2][1] += s * u.x;
    return rot;
}

} // namespace

TEST_CASE("sine integral against quadrature oracle") {
    // oracle: composite GL quadrature of sin(t)/t, no series involved
    for (double x : {0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 4.0, 10.0, 25.0, 50.0, 100.0}) {
        const std::size_t segs = 2 + static_cast<std::size_t>(x / kPi);
        Quadrature1D q = composite_gauss_legendre(16, segs, 0.0, x);
        double ref = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
            ref += q.weights[i] * std::sin(q.nodes[i]) / q.nodes[i];
        CHECK(sine_integral(x) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(sine_integral(0.0) == 0.0);
    CHECK(sine_integral(-1.0) == doctest::Approx(-sine_integral(1.0)).epsilon(1e-15));
    // Si(inf) tail: Si(x) -> pi/2
    CHECK(sine_integral(1e4) == doctest::Approx(kPi / 2).epsilon(1e-4));
}

TEST_CASE("form factor step behavior") {
    FormFactor ff(2.0, 0.0);
    CHECK(form_factor_hat(1.0, ff) == doctest::Approx(0.06349363593424097).epsilon(1e-12));
    CHECK(form_factor_hat(4.0, ff) == 0.0);
    CHECK(form_factor_hat(2.0, ff) == 0.0); // boundary maps to 0
    FormFactor ir(2.0, 0.5);
    CHECK(form_factor_hat(0.25, ir) == 0.0);
    CHECK(form_factor_hat(0.5, ir) == 0.0);
    CHECK(form_factor_hat(1.0, ir) == doctest::Approx(0.06349363593424097).epsilon(1e-12));
    CHECK_THROWS(FormFactor(1.0, 1.5));
}

TEST_CASE("coupling function") {
    SystemConfig cfg({{0.0}, {0.0}}, FormFactor(1.0, 0.0), 0.1);
    Configuration x{{0, 0, 0}, {1, 2, 3}};
    CHECK(std::abs(coupling_v(x, {0.3, 0.1, 0.2}, cfg)) == 0.0);

    SystemConfig one({{2.0}}, FormFactor(1.0, 0.0), 0.1);
    Configuration origin{{0, 0, 0}};
    const auto v = coupling_v(origin, {0.2, 0.1, 0.4}, one);
    CHECK(v.imag() == doctest::Approx(0.0));
    CHECK(v.real() > 0.0);

    // |v|^2 invariant under global translation
    SystemConfig two = two_particle_cfg(1.0, -0.7, 1.5, 0.0);
    Configuration xa{{0.3, 0.0, -0.2}, {1.0, 0.5, 0.0}};
    Configuration xb = xa;
    const Vec3 shift{0.4, -1.2, 2.0};
    for (auto& p : xb) p += shift;
    const Vec3 k{0.3, -0.2, 0.5};
    CHECK(std::norm(coupling_v(xa, k, two)) ==
          doctest::Approx(std::norm(coupling_v(xb, k, two))).epsilon(1e-12));

    CHECK_THROWS_AS((void)coupling_v(xa, {0, 0, 0}, two), std::domain_error);
}

TEST_CASE("pair potential closed form vs brute-force 3D quadrature") {
    // Lambda = 1, r = 1, unit charges: V = -Si(1)/(2 pi^2)
    FormFactor ff(1.0, 0.0);
    const double v = pair_potential(1.0, 1.0, 1.0, ff);
    CHECK(v == doctest::Approx(-sine_integral(1.0) / (2.0 * kPi * kPi)).epsilon(1e-14));

    const auto oracle = test_oracle::shell_integral_cartesian({0.0, 0.0, 1.0}, 0.0, 1.0);
    CHECK(std::abs(oracle.scalar.imag()) < 1e-9);
    CHECK(v == doctest::Approx(-oracle.scalar.real()).epsilon(1e-6));

    // an off-axis direction must give the same value (radial symmetry)
    const Vec3 dir{1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
    const auto oracle2 = test_oracle::shell_integral_cartesian(dir, 0.0, 1.0);
    CHECK(v == doctest::Approx(-oracle2.scalar.real()).epsilon(1e-6));

    // IR-regularized shell
    FormFactor ir(1.0, 0.25);
    const auto oracle3 = test_oracle::shell_integral_cartesian({0.0, 0.0, 2.0}, 0.25, 1.0);
    CHECK(pair_potential(2.0, 1.0, 1.0, ir) ==
          doctest::Approx(-oracle3.scalar.real()).epsilon(1e-6));
}

TEST_CASE("pair potential basics and far field") {
    FormFactor ff(1.0, 0.0);
    CHECK(pair_potential(3.0, 0.0, 1.0, ff) == 0.0);
    CHECK(pair_potential(0.0, 2.0, 3.0, ff) ==
          doctest::Approx(-6.0 / (2.0 * kPi * kPi)).epsilon(1e-14));

    // radial-oracle agreement across the series/closed-form switch
    for (double r : {1e-4, 0.01, 0.3, 0.9999, 1.0001, 2.0, 17.3}) {
        const double v = pair_potential(r, 1.0, 1.0, ff);
        CHECK(v == doctest::Approx(-test_oracle::pair_potential_radial_oracle(r, 0.0, 1.0))
                       .epsilon(1e-10));
    }

    // far field: |V + 1/(4 pi r)| / (1/(4 pi r)) small at Lambda r = 50
    const double r = 50.0;
    const double coulomb = -1.0 / (4.0 * kPi * r);
    const double rel = std::abs(pair_potential(r, 1.0, 1.0, ff) - coulomb) / std::abs(coulomb);
    CHECK(rel < 0.02);
    // sign convention: like charges attract (V increasing near 0)
    CHECK(pair_potential_deriv(0.5, 1.0, 1.0, ff) > 0.0);
}

TEST_CASE("pair potential derivative matches finite differences") {
    FormFactor ff(1.3, 0.2);
    for (double r : {0.05, 0.5, 0.77, 2.0, 10.0}) {
        const double h = 1e-5 * std::max(1.0, r);
        const double fd = (pair_potential(r + h, 1.0, 1.0, ff) -
                           pair_potential(r - h, 1.0, 1.0, ff)) /
                          (2.0 * h);
        CHECK(pair_potential_deriv(r, 1.0, 1.0, ff) == doctest::Approx(fd).epsilon(1e-8));
    }
    CHECK(pair_potential_deriv(0.0, 1.0, 1.0, ff) == 0.0);
}

TEST_CASE("self energies and mass renormalization") {
    SystemConfig zero({{0.0}, {0.0}}, FormFactor(1.0, 0.0), 0.1);
    CHECK(self_energy_e0(zero) == 0.0);
    CHECK(mass_renorm_etilde(0, zero) == 0.0);
    CHECK(effective_mass(0, zero) == 1.0);

    // N=1, e=1, Lambda=1, sigma=0: e0 = -1/(4 pi^2), etilde = 1/(2 pi^2)
    SystemConfig one({{1.0}}, FormFactor(1.0, 0.0), 0.1);
    CHECK(self_energy_e0(one) == doctest::Approx(-1.0 / (4.0 * kPi * kPi)).epsilon(1e-14));
    CHECK(mass_renorm_etilde(0, one) == doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-14));

    // quadrature oracle for etilde: e^2 (2 pi)^{-3} 4 pi \int_sigma^lambda dk
    FormFactor ir(1.7, 0.3);
    SystemConfig irc({{1.4}}, ir, 0.1);
    Quadrature1D q = gauss_legendre(32, ir.sigma_ir, ir.lambda_uv);
    double integral = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) integral += q.weights[i];
    const double oracle =
        1.4 * 1.4 * integral * 4.0 * kPi / std::pow(2.0 * kPi, 3);
    CHECK(mass_renorm_etilde(0, irc) == doctest::Approx(oracle).epsilon(1e-10));

    // identity e0 = -1/2 sum etilde for a random configuration
    SystemConfig many({{1.0}, {-2.0}, {0.5}}, FormFactor(2.1, 0.05), 0.2);
    double sum = 0.0;
    for (std::size_t j = 0; j < many.size(); ++j) sum += mass_renorm_etilde(j, many);
    CHECK(self_energy_e0(many) == doctest::Approx(-0.5 * sum).epsilon(1e-15));
    // etilde = -2 x (single-particle contribution to e0)
    SystemConfig single({{-2.0}}, FormFactor(2.1, 0.05), 0.2);
    CHECK(mass_renorm_etilde(1, many) ==
          doctest::Approx(-2.0 * self_energy_e0(single)).epsilon(1e-15));
}

TEST_CASE("ground energy") {
    SystemConfig one({{1.3}}, FormFactor(1.0, 0.0), 0.1);
    Configuration x1{{0.4, -0.3, 2.0}};
    CHECK(ground_energy(x1, one) == doctest::Approx(self_energy_e0(one)).epsilon(1e-15));

    SystemConfig cfg = two_particle_cfg(1.0, -0.8, 1.2, 0.0);
    Configuration xa{{0.0, 0.0, 0.0}, {1.0, -0.5, 0.3}};
    Configuration xb = xa;
    for (auto& p : xb) p += Vec3{3.0, -2.0, 0.7};
    CHECK(ground_energy(xa, cfg) == doctest::Approx(ground_energy(xb, cfg)).epsilon(1e-14));
}

TEST_CASE("E_sigma converges to E linearly in sigma") {
    Configuration x{{0.0, 0.0, 0.0}, {1.5, 0.2, -0.4}};
    std::vector<double> sigmas{1e-1, 1e-2, 1e-3};
    std::vector<double> gaps;
    SystemConfig base = two_particle_cfg(1.0, 1.0, 1.0, 0.0);
    const double exact = ground_energy(x, base);
    for (double s : sigmas) {
        SystemConfig cfg = two_particle_cfg(1.0, 1.0, 1.0, s);
        gaps.push_back(std::abs(ground_energy(x, cfg) - exact));
    }
    // log-log slope of gap vs sigma ~ 1
    const double slope = (std::log(gaps[0]) - std::log(gaps[2])) /
                         (std::log(sigmas[0]) - std::log(sigmas[2]));
    CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("gradient of ground energy vs 5-point finite differences") {
    SystemConfig one({{1.0}}, FormFactor(1.0, 0.0), 0.1);
    auto g1 = grad_ground_energy({{0.3, 0.2, 0.1}}, one);
    CHECK(norm(g1[0]) == 0.0);

    // antisymmetry for N = 2
    SystemConfig cfg = two_particle_cfg(1.0, 2.0, 1.4, 0.0);
    Configuration x2{{0.1, 0.2, -0.3}, {1.2, -0.7, 0.4}};
    auto g2 = grad_ground_energy(x2, cfg);
    CHECK(norm(g2[0] + g2[1]) < 1e-15);

    // random configurations, N <= 4
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        std::vector<ParticleSpec> parts;
        Configuration x;
        for (std::size_t j = 0; j < n; ++j) {
            parts.push_back({uniform(-2.0, 2.0)});
            x.push_back(random_vec(2.5));
        }
        SystemConfig sys(parts, FormFactor(1.3, trial % 2 ? 0.1 : 0.0), 0.1);
        const auto grad = grad_ground_energy(x, sys);
        double max_grad = 0.0;
        for (const auto& g : grad) max_grad = std::max(max_grad, norm(g));
        const double h = 1e-2;
        for (std::size_t j = 0; j < n; ++j)
            for (int a = 0; a < 3; ++a) {
                auto shifted = [&](double d) {
                    Configuration xs = x;
                    xs[j][a] += d;
                    return ground_energy(xs, sys);
                };
                const double fd = (-shifted(2 * h) + 8 * shifted(h) - 8 * shifted(-h) +
                                   shifted(-2 * h)) /
                                  (12 * h);
                CHECK(std::abs(grad[j][a] - fd) < 1e-7 * (1.0 + max_grad));
            }
    }
}

TEST_CASE("darwin tensor: isotropic limit and brute-force oracle") {
    FormFactor ff(1.0, 0.0);
    DarwinTensor t0 = darwin_tensor({0, 0, 0}, ff);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const double expected = (a == b) ? 1.0 / (6.0 * kPi * kPi) : 0.0;
            CHECK(t0.value[a][b] == doctest::Approx(expected).epsilon(1e-12));
        }

    // random separations against the 3D Cartesian oracle
    for (int trial = 0; trial < 3; ++trial) {
        const Vec3 r = random_vec(1.5);
        const auto oracle = test_oracle::shell_integral_cartesian(r, 0.0, 1.0);
        const DarwinTensor t = darwin_tensor(r, ff);
        const int idx_a[6] = {0, 1, 2, 0, 0, 1};
        const int idx_b[6] = {0, 1, 2, 1, 2, 2};
        for (int e = 0; e < 6; ++e) {
            const double ref = oracle.tensor[e].real();
            CHECK(std::abs(t.value[idx_a[e]][idx_b[e]] - ref) < 1e-5 * (std::abs(ref) + 1e-3));
        }
    }
}

TEST_CASE("darwin tensor: trace identity and rotation covariance") {
    FormFactor ff(1.4, 0.02);
    for (int trial = 0; trial < 8; ++trial) {
        const Vec3 r = random_vec(2.0);
        const DarwinTensor t = darwin_tensor(r, ff);
        // trace T(r) = -V_ij(r)/(e_i e_j)
        CHECK(t.trace() == doctest::Approx(-pair_potential(norm(r), 1.0, 1.0, ff))
                               .epsilon(1e-10));
        // T(R r) = R T(r) R^T
        const auto rot = rotation_matrix(random_vec(1.0) + Vec3{0.1, 0.2, 1.0}, uniform(0, 6));
        Vec3 rr{0, 0, 0};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) rr[a] += rot[a][b] * r[b];
        const DarwinTensor tr = darwin_tensor(rr, ff);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double sum = 0.0;
                for (int c = 0; c < 3; ++c)
                    for (int d = 0; d < 3; ++d) sum += rot[a][c] * t.value[c][d] * rot[b][d];
                CHECK(tr.value[a][b] == doctest::Approx(sum).epsilon(1e-10));
            }
        // evenness
        const DarwinTensor tm = darwin_tensor(-1.0 * r, ff);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(tm.value[a][b] == doctest::Approx(t.value[a][b]).epsilon(1e-14));
    }
}

TEST_CASE("darwin radial derivatives match finite differences") {
    FormFactor ff(1.2, 0.05);
    for (double r : {0.05, 0.4, 0.8333, 0.9, 2.2, 7.0}) {
        const double h = 1e-6 * std::max(1.0, r);
        const DarwinRadial lo = darwin_radial(r - h, ff);
        const DarwinRadial hi = darwin_radial(r + h, ff);
        const DarwinRadial mid = darwin_radial(r, ff);
        CHECK(mid.da == doctest::Approx((hi.a - lo.a) / (2 * h)).epsilon(1e-6));
        CHECK(mid.db == doctest::Approx((hi.b - lo.b) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("darwin energy") {
    SystemConfig cfg = two_particle_cfg(1.0, 1.0, 1.0, 0.0, 0.1);
    PhaseSpacePoint rest{{{0, 0, 0}, {2, 0, 0}}, {{0, 0, 0}, {0, 0, 0}}};
    CHECK(darwin_energy(rest, cfg) == 0.0);

    SystemConfig one({{1.0}}, FormFactor(1.0, 0.0), 0.1);
    PhaseSpacePoint single{{{0, 0, 0}}, {{3, 1, 0}}};
    CHECK(darwin_energy(single, one) == 0.0);

    // sign flip under p_2 -> -p_2 (bilinearity), momenta along the separation
    PhaseSpacePoint p1{{{0, 0, 0}, {2, 0, 0}}, {{1, 0, 0}, {-1, 0, 0}}};
    PhaseSpacePoint p2 = p1;
    p2.p[1] = -p2.p[1];
    const double d1 = darwin_energy(p1, cfg);
    CHECK(d1 != 0.0);
    CHECK(darwin_energy(p2, cfg) == doctest::Approx(-d1).epsilon(1e-14));

    // quadratic-form evaluation agrees with the assembled tensor
    const Vec3 r{0.7, -0.2, 0.4}, u{1.0, 0.5, -0.3}, v{-0.2, 0.8, 0.1};
    const DarwinTensor t = darwin_tensor(r, cfg.form_factor);
    double direct = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) direct += u[a] * t.value[a][b] * v[b];
    CHECK(darwin_quadratic(r, u, v, cfg.form_factor) == doctest::Approx(direct).epsilon(1e-13));
}
