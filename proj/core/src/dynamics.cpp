#include "nelson/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "nelson/darwin.hpp"
#include "nelson/smeared_coulomb.hpp"

namespace nelson {

namespace {

// dx/dt and dp/dt of the Darwin Hamiltonian
//   H = sum_j p_j^2/(2 m_j) + E(x) - eps^2 sum_{l<j} e_l e_j p_l.T(x_j-x_l).p_j
struct Derivatives {
    std::vector<Vec3> xdot;
    std::vector<Vec3> pdot;
};

Derivatives darwin_vector_field(const PhaseSpacePoint& s, const SystemConfig& cfg) {
    const std::size_t n = s.x.size();
    const double eps2 = cfg.epsilon * cfg.epsilon;
    Derivatives d;
    d.xdot.resize(n);
    d.pdot = grad_ground_energy(s.x, cfg);
    for (std::size_t j = 0; j < n; ++j) {
        d.pdot[j] = -d.pdot[j];
        d.xdot[j] = (1.0 / effective_mass(j, cfg)) * s.p[j];
    }
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = l + 1; j < n; ++j) {
            const double c = cfg.particles[l].charge * cfg.particles[j].charge;
            if (c == 0.0) continue;
            const Vec3 r = s.x[j] - s.x[l]; // T and its gradient taken in r
            const DarwinTensor t = darwin_tensor(r, cfg.form_factor);
            Vec3 t_pl, t_pj;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    t_pl[a] += t.value[a][b] * s.p[l][b];
                    t_pj[a] += t.value[a][b] * s.p[j][b];
                }
            d.xdot[j] += (-eps2 * c) * t_pl;
            d.xdot[l] += (-eps2 * c) * t_pj;
            const Vec3 w = darwin_quadratic_grad(r, s.p[l], s.p[j], cfg.form_factor);
            d.pdot[j] += eps2 * c * w;  // -dD/dx_j with D = -eps^2 c p.T.p
            d.pdot[l] -= eps2 * c * w;
        }
    }
    return d;
}

std::vector<Vec3> coulomb_force(const Configuration& x, const SystemConfig& cfg) {
    std::vector<Vec3> f = grad_ground_energy(x, cfg);
    for (auto& v : f) v = -v;
    return f;
}

std::vector<Vec3> state_acceleration(const PhaseSpacePoint& s, const SystemConfig& cfg,
                                     bool darwin) {
    std::vector<Vec3> a = coulomb_force(s.x, cfg);
    if (darwin)
        for (std::size_t j = 0; j < a.size(); ++j) a[j] *= 1.0 / effective_mass(j, cfg);
    return a;
}

} // namespace

double effective_hamiltonian(const PhaseSpacePoint& pt, const SystemConfig& cfg, bool darwin) {
    pt.check_sizes();
    double kin = 0.0;
    for (std::size_t j = 0; j < pt.p.size(); ++j) {
        const double m = darwin ? effective_mass(j, cfg) : 1.0;
        kin += norm2(pt.p[j]) / (2.0 * m);
    }
    double h = kin + ground_energy(pt.x, cfg);
    if (darwin) h += darwin_energy(pt, cfg);
    return h;
}

Trajectory classical_flow(const PhaseSpacePoint& start, double t_final,
                          const IntegratorConfig& icfg, const SystemConfig& cfg) {
    start.check_sizes();
    if (!(t_final > 0.0)) throw std::invalid_argument("classical_flow: t_final must be > 0");
    if (!(icfg.dt > 0.0)) throw std::invalid_argument("classical_flow: dt must be > 0");

    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(t_final / icfg.dt - 1e-12));
    const double dt = t_final / static_cast<double>(n_steps); // uniform grid hitting t_final
    const bool darwin = icfg.darwin_enabled;
    const Scheme scheme = darwin ? Scheme::rk4 : icfg.scheme;

    Trajectory traj;
    const std::size_t n_keep = n_steps / icfg.stride + 1;
    traj.times.reserve(n_keep);
    traj.states.reserve(n_keep);
    traj.energies.reserve(n_keep);
    traj.accelerations.reserve(n_keep);

    PhaseSpacePoint s = start;
    const double h0 = effective_hamiltonian(s, cfg, darwin);
    double kin0 = 0.0;
    for (const auto& p : s.p) kin0 += 0.5 * norm2(p);
    const double scale = std::max(std::abs(h0), kin0 + std::abs(ground_energy(s.x, cfg)));

    auto store = [&](std::size_t step, const PhaseSpacePoint& st) {
        const double h = effective_hamiltonian(st, cfg, darwin);
        if (std::abs(h - h0) > icfg.drift_tolerance * std::max(scale, 1e-300))
            throw std::runtime_error("classical_flow: energy drift exceeds tolerance, reduce dt");
        traj.times.push_back(dt * static_cast<double>(step));
        traj.states.push_back(st);
        traj.energies.push_back(h);
        traj.accelerations.push_back(state_acceleration(st, cfg, darwin));
    };

    store(0, s);

    if (scheme == Scheme::leapfrog) {
        std::vector<Vec3> f = coulomb_force(s.x, cfg);
        for (std::size_t step = 1; step <= n_steps; ++step) {
            for (std::size_t j = 0; j < s.p.size(); ++j) {
                s.p[j] += (0.5 * dt) * f[j];
                s.x[j] += dt * s.p[j];
            }
            f = coulomb_force(s.x, cfg);
            for (std::size_t j = 0; j < s.p.size(); ++j) s.p[j] += (0.5 * dt) * f[j];
            if (step % icfg.stride == 0 || step == n_steps) store(step, s);
        }
    } else {
        for (std::size_t step = 1; step <= n_steps; ++step) {
            const Derivatives k1 = darwin_vector_field(s, cfg);
            PhaseSpacePoint s2 = s;
            for (std::size_t j = 0; j < s.x.size(); ++j) {
                s2.x[j] += (0.5 * dt) * k1.xdot[j];
                s2.p[j] += (0.5 * dt) * k1.pdot[j];
            }
            const Derivatives k2 = darwin_vector_field(s2, cfg);
            PhaseSpacePoint s3 = s;
            for (std::size_t j = 0; j < s.x.size(); ++j) {
                s3.x[j] += (0.5 * dt) * k2.xdot[j];
                s3.p[j] += (0.5 * dt) * k2.pdot[j];
            }
            const Derivatives k3 = darwin_vector_field(s3, cfg);
            PhaseSpacePoint s4 = s;
            for (std::size_t j = 0; j < s.x.size(); ++j) {
                s4.x[j] += dt * k3.xdot[j];
                s4.p[j] += dt * k3.pdot[j];
            }
            const Derivatives k4 = darwin_vector_field(s4, cfg);
            for (std::size_t j = 0; j < s.x.size(); ++j) {
                s.x[j] += (dt / 6.0) * (k1.xdot[j] + 2.0 * k2.xdot[j] + 2.0 * k3.xdot[j] + k4.xdot[j]);
                s.p[j] += (dt / 6.0) * (k1.pdot[j] + 2.0 * k2.pdot[j] + 2.0 * k3.pdot[j] + k4.pdot[j]);
            }
            if (step % icfg.stride == 0 || step == n_steps) store(step, s);
        }
    }
    return traj;
}

const std::vector<Vec3>& accelerations_at(const Trajectory& traj, std::size_t i) {
    return traj.accelerations.at(i);
}

std::vector<Vec3> dipole_acceleration(const Trajectory& traj, const SystemConfig& cfg) {
    if (traj.size() == 0) throw std::invalid_argument("dipole_acceleration: empty trajectory");
    std::vector<Vec3> out(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& acc = traj.accelerations[i];
        Vec3 d;
        for (std::size_t j = 0; j < acc.size(); ++j) d += cfg.particles[j].charge * acc[j];
        out[i] = d;
    }
    return out;
}

Trajectory prescribed_trajectory(
    const std::function<std::vector<Vec3>(double)>& position,
    const std::function<std::vector<Vec3>(double)>& velocity,
    const std::function<std::vector<Vec3>(double)>& acceleration,
    double t_final, double dt) {
    if (!(t_final > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("prescribed_trajectory: need t_final, dt > 0");
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
    const double h = t_final / static_cast<double>(n_steps);
    Trajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.energies.assign(n_steps + 1, 0.0);
    traj.accelerations.reserve(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double t = h * static_cast<double>(i);
        traj.times.push_back(t);
        traj.states.push_back({position(t), velocity(t)});
        traj.accelerations.push_back(acceleration(t));
    }
    return traj;
}

Trajectory oscillator_trajectory(double amplitude, double omega, double t_final, double dt) {
    auto pos = [=](double t) {
        return std::vector<Vec3>{{amplitude * std::sin(omega * t), 0.0, 0.0}};
    };
    auto vel = [=](double t) {
        return std::vector<Vec3>{{amplitude * omega * std::cos(omega * t), 0.0, 0.0}};
    };
    auto acc = [=](double t) {
        return std::vector<Vec3>{{-amplitude * omega * omega * std::sin(omega * t), 0.0, 0.0}};
    };
    return prescribed_trajectory(pos, vel, acc, t_final, dt);
}

} // namespace nelson
