#include "nelson/radiation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nelson/parallel.hpp"
#include "nelson/sine_integral.hpp"
#include "nelson/summation.hpp"

namespace nelson {

namespace {

using cd = std::complex<double>;

// Quadratic (two-interval) Filon cell: weights such that
//   int_0^{2h} g(s) e^{i w s} ds ~ h [w0 g(0) + w1 g(h) + w2 g(2h)],
// exact for quadratic g. m_k(z) = int_0^2 u^k e^{z u} du with z = i w h.
struct FilonQuadratic {
    cd w0, w1, w2;
};

FilonQuadratic filon_quadratic(cd z) {
    cd m0, m1, m2;
    if (std::abs(z) < 0.25) {
        m0 = m1 = m2 = 0.0;
        cd zp = 1.0;
        double fact = 1.0;
        for (int n = 0; n < 18; ++n) {
            const double p = std::pow(2.0, n + 1); // 2^{n+1}
            m0 += zp * (p / (fact * (n + 1.0)));
            m1 += zp * (2.0 * p / (fact * (n + 2.0)));
            m2 += zp * (4.0 * p / (fact * (n + 3.0)));
            zp *= z;
            fact *= (n + 1.0);
        }
    } else {
        const cd ez = std::exp(2.0 * z);
        m0 = (ez - 1.0) / z;
        m1 = (ez * (2.0 * z - 1.0) + 1.0) / (z * z);
        m2 = (ez * (4.0 * z * z - 4.0 * z + 2.0) - 2.0) / (z * z * z);
    }
    return {0.5 * (m2 - 3.0 * m1 + 2.0 * m0), 2.0 * m1 - m2, 0.5 * (m2 - m1)};
}

// Linear (single-interval) cell: int_0^h g e^{i w s} ds ~ h [c0 g(0) + c1 (g(h)-g(0))].
struct FilonLinear {
    cd c0, c1;
};

FilonLinear filon_linear(cd z) {
    if (std::abs(z) < 0.25) {
        cd c0 = 0.0, c1 = 0.0, zp = 1.0;
        double fact = 1.0;
        for (int n = 0; n < 18; ++n) {
            c0 += zp / (fact * (n + 1.0));
            c1 += zp / (fact * (n + 2.0));
            zp *= z;
            fact *= (n + 1.0);
        }
        return {c0, c1};
    }
    const cd ez = std::exp(z);
    return {(ez - 1.0) / z, (ez * (z - 1.0) + 1.0) / (z * z)};
}

std::size_t grid_index(const Trajectory& traj, double t, const char* who) {
    const double dt = traj.dt();
    if (traj.size() < 2 || dt <= 0.0)
        throw std::invalid_argument(std::string(who) + ": trajectory needs >= 2 uniform samples");
    const double m = t / dt;
    const auto idx = static_cast<std::size_t>(std::llround(m));
    if (idx >= traj.size() || std::abs(m - static_cast<double>(idx)) > 1e-6)
        throw std::invalid_argument(std::string(who) + ": t must lie on the trajectory grid");
    return idx;
}

void require_resolved(double dt, double k_abs, double eps, const char* who) {
    if (dt > eps / (4.0 * k_abs) * (1.0 + 1e-12))
        throw std::runtime_error(std::string(who) +
                                 ": trajectory dt does not resolve e^{i s|k|/eps}; need dt <= eps/(4|k|)");
}

// kappa . [e^{i k.x_j(s)}] xdd_j(s) at sample i for particle j.
cd integrand_sample(const Trajectory& traj, std::size_t i, std::size_t j, const Vec3& k,
                    const Vec3& kappa, bool dipole_approx) {
    const Vec3& a = traj.accelerations[i][j];
    const double proj = dot(kappa, a);
    if (dipole_approx) return {proj, 0.0};
    const double arg = dot(k, traj.states[i].x[j]);
    return cd(std::cos(arg), std::sin(arg)) * proj;
}

// Charge-weighted dipole acceleration series.
std::vector<Vec3> dd_series(const Trajectory& traj, const SystemConfig& cfg) {
    return dipole_acceleration(traj, cfg);
}

// Moments of the power kernel K(D) = [sin(D L/e) - sin(D s/e)]/D against a
// linear interpolant on each grid interval; precomputed once per grid.
struct KernelMoments {
    std::vector<double> s0; // int_{D_i}^{D_{i+1}} K dD
    std::vector<double> s1; // int (D - D_i) K dD
};

KernelMoments kernel_moments(std::size_t n_intervals, double dt, double a_uv, double a_ir) {
    KernelMoments km;
    km.s0.assign(n_intervals, 0.0);
    km.s1.assign(n_intervals, 0.0);
    auto add_piece = [&](double a, double sign) {
        if (a == 0.0) return;
        double si_prev = 0.0;
        double cos_prev = 1.0;
        for (std::size_t i = 0; i < n_intervals; ++i) {
            const double d0 = dt * static_cast<double>(i);
            const double d1 = dt * static_cast<double>(i + 1);
            const double si_next = sine_integral(a * d1);
            const double cos_next = std::cos(a * d1);
            const double dsi = si_next - si_prev;
            km.s0[i] += sign * dsi;
            km.s1[i] += sign * ((cos_prev - cos_next) / a - d0 * dsi);
            si_prev = si_next;
            cos_prev = cos_next;
        }
    };
    add_piece(a_uv, 1.0);
    add_piece(a_ir, -1.0);
    return km;
}

double kernel_power_at(std::size_t m, const std::vector<Vec3>& dd, const KernelMoments& km,
                       double dt) {
    if (m == 0) return 0.0;
    const Vec3 dd_t = dd[m];
    KahanSum sum;
    for (std::size_t i = 0; i < m; ++i) {
        const double g0 = dot(dd_t, dd[m - i]);
        const double g1 = dot(dd_t, dd[m - i - 1]);
        sum.add(g0 * km.s0[i] + (g1 - g0) / dt * km.s1[i]);
    }
    return sum.value();
}

} // namespace

PhaseSpaceEnsemble sample_wigner_gaussian(const PhaseSpacePoint& center, double pos_spread,
                                          double mom_spread, std::size_t n, std::uint64_t seed) {
    center.check_sizes();
    if (n == 0) throw std::invalid_argument("sample_wigner_gaussian: n must be >= 1");
    if (pos_spread < 0.0 || mom_spread < 0.0)
        throw std::invalid_argument("sample_wigner_gaussian: spreads must be >= 0");
    PhaseSpaceEnsemble ens;
    ens.seed = seed;
    ens.points.reserve(n);
    ens.weights.assign(n, 1.0 / static_cast<double>(n));
    std::mt19937_64 rng(seed);
    // Box-Muller keeps the stream identical across standard libraries.
    auto gaussian = [&rng]() {
        const double u1 = (static_cast<double>(rng()) + 0.5) / 18446744073709551616.0;
        const double u2 = (static_cast<double>(rng()) + 0.5) / 18446744073709551616.0;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    for (std::size_t s = 0; s < n; ++s) {
        PhaseSpacePoint pt = center;
        for (auto& xj : pt.x)
            for (int a = 0; a < 3; ++a) xj[a] += pos_spread * gaussian();
        for (auto& pj : pt.p)
            for (int a = 0; a < 3; ++a) pj[a] += mom_spread * gaussian();
        ens.points.push_back(std::move(pt));
    }
    return ens;
}

TrajectoryEnsemble flow_ensemble(const PhaseSpaceEnsemble& ens, double t_final,
                                 const IntegratorConfig& icfg, const SystemConfig& cfg) {
    TrajectoryEnsemble out(ens.points.size());
    parallel_for(ens.points.size(), [&](std::size_t i) {
        out[i] = {ens.weights[i], classical_flow(ens.points[i], t_final, icfg, cfg)};
    });
    return out;
}

std::complex<double> radiated_amplitude(const Vec3& k, double t, const Trajectory& traj,
                                        const SystemConfig& cfg, bool dipole_approx) {
    const double kn = norm(k);
    if (kn == 0.0) throw std::domain_error("radiated_amplitude: |k| = 0");
    const double ff = form_factor_hat(kn, cfg.form_factor);
    if (ff == 0.0) return {0.0, 0.0};
    const std::size_t m = grid_index(traj, t, "radiated_amplitude");
    const double dt = traj.dt();
    const double eps = cfg.epsilon;
    require_resolved(dt, kn, eps, "radiated_amplitude");
    if (m == 0) return {0.0, 0.0};

    const Vec3 kappa = (1.0 / kn) * k;
    const double w = kn / eps;
    const cd z(0.0, w * dt);
    const FilonQuadratic fq = filon_quadratic(z);
    const FilonLinear fl = filon_linear(z);
    const std::size_t np = traj.states[0].x.size();
    cd total = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
        const double ej = cfg.particles[j].charge;
        if (ej == 0.0) continue;
        cd acc = 0.0;
        std::size_t i = 0;
        for (; i + 2 <= m; i += 2) {
            const cd phase = std::exp(cd(0.0, w * traj.times[i]));
            const cd g0 = integrand_sample(traj, i, j, k, kappa, dipole_approx);
            const cd g1 = integrand_sample(traj, i + 1, j, k, kappa, dipole_approx);
            const cd g2 = integrand_sample(traj, i + 2, j, k, kappa, dipole_approx);
            acc += dt * phase * (fq.w0 * g0 + fq.w1 * g1 + fq.w2 * g2);
        }
        if (i < m) {
            const cd phase = std::exp(cd(0.0, w * traj.times[i]));
            const cd g0 = integrand_sample(traj, i, j, k, kappa, dipole_approx);
            const cd g1 = integrand_sample(traj, i + 1, j, k, kappa, dipole_approx);
            acc += dt * phase * (fl.c0 * g0 + fl.c1 * (g1 - g0));
        }
        total += ej * acc;
    }
    const double prefactor = -eps / std::sqrt(2.0) * ff / std::pow(kn, 1.5);
    return prefactor * total;
}

double radiated_energy(double t, const Trajectory& traj, const ModeQuadrature& quad,
                       const SystemConfig& cfg, bool dipole_approx) {
    (void)grid_index(traj, t, "radiated_energy");
    std::vector<double> contrib(quad.size());
    parallel_for(quad.size(), [&](std::size_t q) {
        const cd a = radiated_amplitude(quad.k[q], t, traj, cfg, dipole_approx);
        contrib[q] = quad.weight[q] * quad.omega[q] * std::norm(a);
    });
    KahanSum sum;
    for (double c : contrib) sum.add(c);
    return sum.value();
}

double radiated_power_kernel(double t, const TrajectoryEnsemble& ens, const SystemConfig& cfg) {
    if (ens.empty()) throw std::invalid_argument("radiated_power_kernel: empty ensemble");
    const double eps = cfg.epsilon;
    const double pref = eps * eps * eps / (6.0 * std::numbers::pi * std::numbers::pi);
    KahanSum total;
    for (const auto& [weight, traj] : ens) {
        const std::size_t m = grid_index(traj, t, "radiated_power_kernel");
        const double dt = traj.dt();
        const auto dd = dd_series(traj, cfg);
        const KernelMoments km =
            kernel_moments(m, dt, cfg.form_factor.lambda_uv / eps, cfg.form_factor.sigma_ir / eps);
        total.add(weight * kernel_power_at(m, dd, km, dt));
    }
    return pref * total.value();
}

double radiated_power_larmor(double t, const TrajectoryEnsemble& ens, const SystemConfig& cfg) {
    if (ens.empty()) throw std::invalid_argument("radiated_power_larmor: empty ensemble");
    const double eps = cfg.epsilon;
    const double pref = eps * eps * eps / (12.0 * std::numbers::pi);
    KahanSum total;
    for (const auto& [weight, traj] : ens) {
        const std::size_t m = grid_index(traj, t, "radiated_power_larmor");
        const auto dd = dd_series(traj, cfg);
        total.add(weight * norm2(dd[m]));
    }
    return pref * total.value();
}

RadiationSeries radiation_series(const TrajectoryEnsemble& ens, const ModeQuadrature& quad,
                                 const SystemConfig& cfg, std::size_t stride,
                                 bool dipole_approx) {
    if (ens.empty()) throw std::invalid_argument("radiation_series: empty ensemble");
    if (stride == 0) stride = 1;
    const Trajectory& ref = ens.front().second;
    const std::size_t n_t = ref.size();
    const double dt = ref.dt();
    for (const auto& [w, traj] : ens)
        if (traj.size() != n_t || std::abs(traj.dt() - dt) > 1e-12 * dt)
            throw std::invalid_argument("radiation_series: ensemble trajectories must share the grid");

    RadiationSeries out;
    std::vector<std::size_t> sample_idx;
    for (std::size_t i = 0; i < n_t; i += stride) {
        sample_idx.push_back(i);
        out.times.push_back(ref.times[i]);
    }
    const std::size_t n_s = sample_idx.size();
    out.e_rad.assign(n_s, 0.0);
    out.p_kernel.assign(n_s, 0.0);
    out.p_larmor.assign(n_s, 0.0);

    const double eps = cfg.epsilon;
    const std::size_t np = cfg.size();
    const std::size_t n_mem = ens.size();

    // E_rad: incremental linear-Filon accumulation of the per-particle time
    // integrals along the shared grid, one running state per (mode, member).
    std::vector<std::vector<double>> node_contrib(quad.size(), std::vector<double>(n_s, 0.0));
    parallel_for(quad.size(), [&](std::size_t q) {
        const Vec3 k = quad.k[q];
        const double kn = quad.omega[q];
        const double ffv = form_factor_hat(kn, cfg.form_factor);
        if (ffv == 0.0) return;
        require_resolved(dt, kn, eps, "radiation_series");
        const Vec3 kappa = (1.0 / kn) * k;
        const double w = kn / eps;
        const FilonLinear fl = filon_linear(cd(0.0, w * dt));
        const double prefactor = -eps / std::sqrt(2.0) * ffv / std::pow(kn, 1.5);

        std::vector<cd> integral(n_mem * np, cd(0.0, 0.0));
        std::size_t s_out = 0;
        for (std::size_t i = 0; i < n_t; ++i) {
            if (s_out < n_s && sample_idx[s_out] == i) {
                KahanSum e_acc;
                for (std::size_t mbr = 0; mbr < n_mem; ++mbr) {
                    cd amp = 0.0;
                    for (std::size_t j = 0; j < np; ++j)
                        amp += cfg.particles[j].charge * integral[mbr * np + j];
                    e_acc.add(ens[mbr].first * std::norm(prefactor * amp));
                }
                node_contrib[q][s_out] = quad.weight[q] * kn * e_acc.value();
                ++s_out;
            }
            if (i + 1 >= n_t) break;
            const cd phase = std::exp(cd(0.0, w * ref.times[i]));
            for (std::size_t mbr = 0; mbr < n_mem; ++mbr) {
                const Trajectory& traj = ens[mbr].second;
                for (std::size_t j = 0; j < np; ++j) {
                    const cd g0 = integrand_sample(traj, i, j, k, kappa, dipole_approx);
                    const cd g1 = integrand_sample(traj, i + 1, j, k, kappa, dipole_approx);
                    integral[mbr * np + j] += dt * phase * (fl.c0 * g0 + fl.c1 * (g1 - g0));
                }
            }
        }
    });
    for (std::size_t q = 0; q < quad.size(); ++q)
        for (std::size_t s = 0; s < n_s; ++s) out.e_rad[s] += node_contrib[q][s];

    // Kernel and Larmor powers share precomputed dipole series and kernel
    // moments over the whole grid.
    const KernelMoments km = kernel_moments(n_t > 1 ? n_t - 1 : 1, dt,
                                            cfg.form_factor.lambda_uv / eps,
                                            cfg.form_factor.sigma_ir / eps);
    std::vector<std::vector<Vec3>> dd_all(n_mem);
    for (std::size_t mbr = 0; mbr < n_mem; ++mbr) dd_all[mbr] = dd_series(ens[mbr].second, cfg);
    const double pref_kernel = eps * eps * eps / (6.0 * std::numbers::pi * std::numbers::pi);
    const double pref_larmor = eps * eps * eps / (12.0 * std::numbers::pi);
    parallel_for(n_s, [&](std::size_t s) {
        const std::size_t m = sample_idx[s];
        KahanSum pk, pl;
        for (std::size_t mbr = 0; mbr < n_mem; ++mbr) {
            pk.add(ens[mbr].first * kernel_power_at(m, dd_all[mbr], km, dt));
            pl.add(ens[mbr].first * norm2(dd_all[mbr][m]));
        }
        out.p_kernel[s] = pref_kernel * pk.value();
        out.p_larmor[s] = pref_larmor * pl.value();
    });
    return out;
}

std::vector<std::pair<double, double>> radiated_spectrum(
    double t, const Trajectory& traj, const SystemConfig& cfg, std::size_t n_radial,
    std::size_t n_polar, std::size_t n_azimuth, bool dipole_approx) {
    const FormFactor& ff = cfg.form_factor;
    Quadrature1D radial = gauss_legendre(n_radial, ff.sigma_ir, ff.lambda_uv);
    SphereGrid ang = sphere_grid(n_polar, n_azimuth);
    std::vector<std::pair<double, double>> out(radial.size());
    parallel_for(radial.size(), [&](std::size_t r) {
        const double kr = radial.nodes[r];
        KahanSum density;
        for (std::size_t a = 0; a < ang.size(); ++a) {
            const Vec3 k = kr * ang.directions[a];
            const cd amp = radiated_amplitude(k, t, traj, cfg, dipole_approx);
            density.add(ang.weights[a] * std::norm(amp));
        }
        out[r] = {kr, kr * kr * kr * density.value()}; // k^2 measure times |k| energy
    });
    return out;
}

} // namespace nelson
