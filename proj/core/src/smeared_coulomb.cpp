#include "nelson/smeared_coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nelson/sine_integral.hpp"

namespace nelson {

namespace {

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

// [Si(a r) - Si(b r)] / r, continuous at r = 0 with value a - b.
// Series: sum_{n>=0} (-1)^n r^{2n} (a^{2n+1} - b^{2n+1}) / ((2n+1)(2n+1)!).
double si_difference_over_r(double r, double a, double b) {
    const double ua = a * r, ub = b * r;
    if (std::max(ua, ub) <= 1.0) {
        double pa = a, pb = b;        // a^{2n+1}, b^{2n+1}
        double fact = 1.0;            // (2n+1)!
        const double r2 = r * r;
        double sum = 0.0;
        for (int n = 0; n < 20; ++n) {
            const double odd = 2.0 * n + 1.0;
            const double term = (pa - pb) / (odd * fact);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            pa *= -a * a * r2;
            pb *= -b * b * r2;
            fact *= (odd + 1.0) * (odd + 2.0);
        }
        return sum;
    }
    return (sine_integral(ua) - sine_integral(ub)) / r;
}

// [ (sin(a r) - Si(a r)) - (sin(b r) - Si(b r)) ] / r^2; ~ -(a^3 - b^3) r / 9
// near r = 0. Series: sin u - Si u = sum_{n>=1} (-1)^n u^{2n+1} 2n /
// ((2n+1)(2n+1)!).
double sin_minus_si_over_r2(double r, double a, double b) {
    const double ua = a * r, ub = b * r;
    if (std::max(ua, ub) <= 1.0) {
        const double r2 = r * r;
        double pa = a * a * a * r, pb = b * b * b * r; // a^{2n+1} r^{2n-1}
        double fact = 6.0;                             // (2n+1)!
        double sum = 0.0;
        double sign = -1.0;
        for (int n = 1; n < 20; ++n) {
            const double odd = 2.0 * n + 1.0;
            const double term = sign * (pa - pb) * (2.0 * n) / (odd * fact);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            pa *= a * a * r2;
            pb *= b * b * r2;
            fact *= (odd + 1.0) * (odd + 2.0);
            sign = -sign;
        }
        return sum;
    }
    return ((std::sin(ua) - sine_integral(ua)) - (std::sin(ub) - sine_integral(ub))) / (r * r);
}

} // namespace

std::complex<double> coupling_v(const Configuration& x, const Vec3& k, const SystemConfig& cfg) {
    if (x.size() != cfg.size())
        throw std::invalid_argument("coupling_v: configuration size mismatch");
    const double kn = norm(k);
    if (kn == 0.0)
        throw std::domain_error("coupling_v: |k| = 0 is outside the domain");
    const double ff = form_factor_hat(kn, cfg.form_factor);
    if (ff == 0.0) return {0.0, 0.0};
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double phase = dot(k, x[j]);
        sum += cfg.particles[j].charge * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return sum * (ff / std::pow(kn, 1.5));
}

double pair_potential(double r, double e_i, double e_j, const FormFactor& ff) {
    if (!(r >= 0.0)) throw std::domain_error("pair_potential: r must be >= 0");
    if (e_i == 0.0 || e_j == 0.0) return 0.0;
    if (r == 0.0) return -e_i * e_j * (ff.lambda_uv - ff.sigma_ir) / kTwoPiSq;
    return -e_i * e_j * si_difference_over_r(r, ff.lambda_uv, ff.sigma_ir) / kTwoPiSq;
}

double pair_potential_deriv(double r, double e_i, double e_j, const FormFactor& ff) {
    if (!(r >= 0.0)) throw std::domain_error("pair_potential_deriv: r must be >= 0");
    if (e_i == 0.0 || e_j == 0.0 || r == 0.0) return 0.0;
    return -e_i * e_j * sin_minus_si_over_r2(r, ff.lambda_uv, ff.sigma_ir) / kTwoPiSq;
}

double mass_renorm_etilde(std::size_t j, const SystemConfig& cfg) {
    if (j >= cfg.size()) throw std::out_of_range("mass_renorm_etilde: bad particle index");
    const double e = cfg.particles[j].charge;
    return e * e * (cfg.form_factor.lambda_uv - cfg.form_factor.sigma_ir) / kTwoPiSq;
}

double effective_mass(std::size_t j, const SystemConfig& cfg) {
    return 1.0 / (1.0 + 0.5 * cfg.epsilon * cfg.epsilon * mass_renorm_etilde(j, cfg));
}

double self_energy_e0(const SystemConfig& cfg) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cfg.size(); ++j) sum += mass_renorm_etilde(j, cfg);
    return -0.5 * sum;
}

double ground_energy(const Configuration& x, const SystemConfig& cfg) {
    if (x.size() != cfg.size())
        throw std::invalid_argument("ground_energy: configuration size mismatch");
    double pot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            pot += pair_potential(norm(x[i] - x[j]), cfg.particles[i].charge,
                                  cfg.particles[j].charge, cfg.form_factor);
    return pot + self_energy_e0(cfg);
}

std::vector<Vec3> grad_ground_energy(const Configuration& x, const SystemConfig& cfg) {
    if (x.size() != cfg.size())
        throw std::invalid_argument("grad_ground_energy: configuration size mismatch");
    std::vector<Vec3> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const Vec3 d = x[i] - x[j];
            const double r = norm(d);
            if (r == 0.0) continue; // V'(0) = 0, no contribution
            const double dv = pair_potential_deriv(r, cfg.particles[i].charge,
                                                   cfg.particles[j].charge, cfg.form_factor);
            const Vec3 g = (dv / r) * d;
            grad[i] += g;
            grad[j] -= g;
        }
    }
    return grad;
}

} // namespace nelson
