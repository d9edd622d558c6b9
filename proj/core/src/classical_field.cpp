#include "nelson/classical_field.hpp"

#include <cmath>
#include <stdexcept>

#include "nelson/parallel.hpp"
#include "nelson/smeared_coulomb.hpp"
#include "nelson/summation.hpp"

namespace nelson {

using cd = std::complex<double>;

ClassicalFieldSim::ClassicalFieldSim(const SystemConfig& cfg, const ModeQuadrature& quad)
    : cfg_(cfg) {
    cfg_.validate();
    k_.reserve(quad.size() / 2);
    w_.reserve(quad.size() / 2);
    omega_.reserve(quad.size() / 2);
    ff_.reserve(quad.size() / 2);
    for (std::size_t i = 0; i < quad.size(); ++i) {
        if (!(quad.k[i].z > 0.0)) continue; // keep the k_z > 0 half-space
        k_.push_back(quad.k[i]);
        w_.push_back(2.0 * quad.weight[i]); // accounts for the -k partner
        omega_.push_back(quad.omega[i]);
        ff_.push_back(form_factor_hat(quad.omega[i], cfg_.form_factor));
    }
    if (k_.empty())
        throw std::invalid_argument(
            "ClassicalFieldSim: quadrature has no k_z > 0 nodes; use even polar/azimuth counts");
}

std::vector<cd> ClassicalFieldSim::source(const Configuration& q) const {
    // rho_hat(k) = sum_j e_j phi_hat(|k|) e^{-i k.q_j}
    std::vector<cd> rho(k_.size());
    for (std::size_t m = 0; m < k_.size(); ++m) {
        cd acc = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double arg = -dot(k_[m], q[j]);
            acc += cfg_.particles[j].charge * cd(std::cos(arg), std::sin(arg));
        }
        rho[m] = acc * ff_[m];
    }
    return rho;
}

CoupledState ClassicalFieldSim::equilibrium_state(const PhaseSpacePoint& macro) const {
    macro.check_sizes();
    CoupledState s;
    s.q = macro.x;
    s.v.resize(macro.p.size());
    for (std::size_t j = 0; j < macro.p.size(); ++j)
        s.v[j] = cfg_.epsilon * macro.p[j]; // micro velocity = eps * macro momentum
    const std::vector<cd> rho = source(s.q);
    s.field.phi.resize(k_.size());
    s.field.pi.resize(k_.size());
    for (std::size_t m = 0; m < k_.size(); ++m) {
        const double k2 = omega_[m] * omega_[m];
        s.field.phi[m] = -rho[m] / k2;
        // d/dt rho_hat = sum_j e_j ff (-i k.v_j) e^{-i k.q_j}
        cd drho = 0.0;
        for (std::size_t j = 0; j < s.q.size(); ++j) {
            const double arg = -dot(k_[m], s.q[j]);
            drho += cfg_.particles[j].charge * cd(0.0, -dot(k_[m], s.v[j])) *
                    cd(std::cos(arg), std::sin(arg));
        }
        s.field.pi[m] = -ff_[m] * drho / k2;
    }
    return s;
}

CoupledState ClassicalFieldSim::bare_state(const PhaseSpacePoint& macro) const {
    macro.check_sizes();
    CoupledState s;
    s.q = macro.x;
    s.v.resize(macro.p.size());
    for (std::size_t j = 0; j < macro.p.size(); ++j) s.v[j] = cfg_.epsilon * macro.p[j];
    s.field.phi.assign(k_.size(), cd(0.0, 0.0));
    s.field.pi.assign(k_.size(), cd(0.0, 0.0));
    return s;
}

std::vector<Vec3> ClassicalFieldSim::force(const CoupledState& s) const {
    // F_j = -\int dk i k phi(k) e^{i k.q_j} rho_j(k); the half-space pair
    // contributes twice the real part.
    const std::size_t np = s.q.size();
    std::vector<Vec3> f(np);
    for (std::size_t j = 0; j < np; ++j) {
        const double ej = cfg_.particles[j].charge;
        if (ej == 0.0) continue;
        KahanSum fx, fy, fz;
        for (std::size_t m = 0; m < k_.size(); ++m) {
            const double arg = dot(k_[m], s.q[j]);
            const cd phase(std::cos(arg), std::sin(arg));
            // Re[i phi e^{i k.q}] = -Im(phi e^{i k.q})
            const double common = -w_[m] * ff_[m] * ej * (-std::imag(s.field.phi[m] * phase));
            fx.add(common * k_[m].x);
            fy.add(common * k_[m].y);
            fz.add(common * k_[m].z);
        }
        f[j] = {fx.value(), fy.value(), fz.value()};
    }
    return f;
}

void ClassicalFieldSim::step(CoupledState& s, double dt_micro) const {
    const double mass = 1.0 / (cfg_.epsilon * cfg_.epsilon);
    const double half = 0.5 * dt_micro;

    auto rotate = [&](double dt) {
        for (std::size_t m = 0; m < k_.size(); ++m) {
            const double w = omega_[m];
            const double c = std::cos(w * dt), sn = std::sin(w * dt);
            const cd phi = s.field.phi[m], pi = s.field.pi[m];
            s.field.phi[m] = phi * c + pi * (sn / w);
            s.field.pi[m] = -phi * (w * sn) + pi * c;
        }
    };

    rotate(half);

    // B step: particle kick-drift-kick in the frozen field, field momentum
    // kicked by the source frozen at each half-kick endpoint.
    std::vector<Vec3> f = force(s);
    for (std::size_t j = 0; j < s.q.size(); ++j) s.v[j] += (half / mass) * f[j];
    std::vector<cd> rho = source(s.q);
    for (std::size_t m = 0; m < k_.size(); ++m) s.field.pi[m] -= half * rho[m];

    for (std::size_t j = 0; j < s.q.size(); ++j) s.q[j] += dt_micro * s.v[j];

    rho = source(s.q);
    for (std::size_t m = 0; m < k_.size(); ++m) s.field.pi[m] -= half * rho[m];
    f = force(s);
    for (std::size_t j = 0; j < s.q.size(); ++j) s.v[j] += (half / mass) * f[j];

    rotate(half);
    s.time += dt_micro;
}

double ClassicalFieldSim::energy(const CoupledState& s) const {
    const double mass = 1.0 / (cfg_.epsilon * cfg_.epsilon);
    KahanSum e;
    for (const auto& v : s.v) e.add(0.5 * mass * norm2(v));
    const std::vector<cd> rho = source(s.q);
    for (std::size_t m = 0; m < k_.size(); ++m) {
        const double k2 = omega_[m] * omega_[m];
        e.add(w_[m] * (0.5 * (std::norm(s.field.pi[m]) + k2 * std::norm(s.field.phi[m])) +
                       std::real(s.field.phi[m] * std::conj(rho[m]))));
    }
    return e.value();
}

Vec3 ClassicalFieldSim::momentum(const CoupledState& s) const {
    const double mass = 1.0 / (cfg_.epsilon * cfg_.epsilon);
    Vec3 p;
    for (const auto& v : s.v) p += mass * v;
    KahanSum px, py, pz;
    for (std::size_t m = 0; m < k_.size(); ++m) {
        const double common = w_[m] * std::imag(std::conj(s.field.pi[m]) * s.field.phi[m]);
        px.add(common * k_[m].x);
        py.add(common * k_[m].y);
        pz.add(common * k_[m].z);
    }
    return p + Vec3{px.value(), py.value(), pz.value()};
}

std::vector<std::pair<double, double>> ClassicalFieldSim::field_spectrum(
    const CoupledState& s) const {
    std::vector<std::pair<double, double>> out(k_.size());
    for (std::size_t m = 0; m < k_.size(); ++m) {
        const double k2 = omega_[m] * omega_[m];
        out[m] = {omega_[m],
                  0.5 * w_[m] * (std::norm(s.field.pi[m]) + k2 * std::norm(s.field.phi[m]))};
    }
    return out;
}

Trajectory ClassicalFieldSim::run(const PhaseSpacePoint& macro_start, double t_macro,
                                  double dt_micro, std::size_t stride, bool bare_field,
                                  double drift_tol) const {
    if (!(t_macro > 0.0) || !(dt_micro > 0.0))
        throw std::invalid_argument("ClassicalFieldSim::run: need positive times");
    const double lam = cfg_.form_factor.lambda_uv;
    if (dt_micro > 0.25 * (2.0 * std::numbers::pi / lam) * (1.0 + 1e-12))
        throw std::invalid_argument(
            "ClassicalFieldSim::run: dt_micro must resolve the fastest mode (<= pi/(2 Lambda))");
    if (stride == 0) stride = 1;

    const double t_micro = t_macro / cfg_.epsilon;
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(t_micro / dt_micro - 1e-12));
    const double dt = t_micro / static_cast<double>(n_steps);

    CoupledState s = bare_field ? bare_state(macro_start) : equilibrium_state(macro_start);
    const double e0 = energy(s);
    double kin0 = 0.0;
    const double mass = 1.0 / (cfg_.epsilon * cfg_.epsilon);
    for (const auto& v : s.v) kin0 += 0.5 * mass * norm2(v);
    const double scale = std::max({std::abs(e0), kin0, 1e-12});

    Trajectory traj;
    auto store = [&](const CoupledState& st) {
        const double e = energy(st);
        if (std::abs(e - e0) > drift_tol * scale * std::max(1.0, t_macro))
            throw std::runtime_error("ClassicalFieldSim::run: energy drift exceeds tolerance");
        traj.times.push_back(cfg_.epsilon * st.time);
        PhaseSpacePoint pt;
        pt.x = st.q;
        pt.p.resize(st.v.size());
        for (std::size_t j = 0; j < st.v.size(); ++j) pt.p[j] = (1.0 / cfg_.epsilon) * st.v[j];
        traj.states.push_back(std::move(pt));
        traj.energies.push_back(e);
        // macroscopic acceleration equals the microscopic force
        traj.accelerations.push_back(force(st));
    };

    store(s);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        step(s, dt);
        if (i % stride == 0 || i == n_steps) store(s);
    }
    return traj;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("log_log_slope: need >= 2 matching points");
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

std::vector<ScalingRow> epsilon_scaling_study(const SystemConfig& base,
                                              const PhaseSpacePoint& start,
                                              const ScalingStudyConfig& study) {
    std::vector<ScalingRow> rows;
    rows.reserve(study.epsilons.size());
    const ModeQuadrature quad =
        shell_quadrature(base.form_factor, study.n_radial, study.n_polar, study.n_azimuth);
    for (double eps : study.epsilons) {
        SystemConfig cfg = base;
        cfg.epsilon = eps;
        const ClassicalFieldSim sim(cfg, quad);

        const std::size_t n_compare = 40;
        const std::size_t micro_steps =
            static_cast<std::size_t>(std::ceil(study.t_macro / eps / study.dt_micro));
        const std::size_t stride = std::max<std::size_t>(1, micro_steps / n_compare);
        const Trajectory full = sim.run(start, study.t_macro, study.dt_micro, stride);

        IntegratorConfig icfg;
        icfg.dt = study.dt_macro;
        icfg.drift_tolerance = 1e-5;
        IntegratorConfig icfg_darwin = icfg;
        icfg_darwin.darwin_enabled = true;
        const Trajectory coulomb = classical_flow(start, study.t_macro, icfg, cfg);
        const Trajectory darwin = classical_flow(start, study.t_macro, icfg_darwin, cfg);

        auto interp_state = [](const Trajectory& tr, double t, std::size_t j) {
            const double dt = tr.dt();
            const double m = t / dt;
            std::size_t lo = static_cast<std::size_t>(std::floor(m));
            if (lo + 1 >= tr.size()) lo = tr.size() - 2;
            const double a = m - static_cast<double>(lo);
            return (1.0 - a) * tr.states[lo].x[j] + a * tr.states[lo + 1].x[j];
        };

        ScalingRow row{eps, 0.0, 0.0};
        for (std::size_t i = 0; i < full.size(); ++i) {
            const double t = full.times[i];
            for (std::size_t j = 0; j < start.x.size(); ++j) {
                const Vec3 qc = interp_state(coulomb, t, j);
                const Vec3 qd = interp_state(darwin, t, j);
                row.deviation_coulomb =
                    std::max(row.deviation_coulomb, norm(full.states[i].x[j] - qc));
                row.deviation_darwin =
                    std::max(row.deviation_darwin, norm(full.states[i].x[j] - qd));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace nelson
