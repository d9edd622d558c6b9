#include "nelson/runconfig.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "nelson/classical_field.hpp"
#include "nelson/csv.hpp"
#include "nelson/dynamics.hpp"
#include "nelson/fock_ops.hpp"
#include "nelson/krylov.hpp"
#include "nelson/parallel.hpp"
#include "nelson/radiation.hpp"
#include "nelson/smeared_coulomb.hpp"
#include "nelson/toy_model.hpp"

namespace nelson {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("field '" + key + "': " + e.what());
    }
}

template <class T>
T require(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("missing required field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("field '" + key + "': " + e.what());
    }
}

std::vector<Vec3> parse_vec3_list(const json& j, const std::string& key) {
    const auto raw = require<std::vector<std::vector<double>>>(j, key);
    std::vector<Vec3> out;
    out.reserve(raw.size());
    for (const auto& v : raw) {
        if (v.size() != 3) throw ConfigError("field '" + key + "': entries must have 3 components");
        out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

double resolve_sigma(const json& system, double epsilon) {
    const bool has_sigma = system.contains("sigma");
    const bool has_rule = system.contains("sigma_rule");
    if (has_sigma && has_rule)
        throw ConfigError("system: give either 'sigma' or 'sigma_rule', not both");
    if (has_sigma) return require<double>(system, "sigma");
    const std::string rule = has_rule ? require<std::string>(system, "sigma_rule") : "eps^8";
    if (rule != "eps^8") throw ConfigError("system.sigma_rule: only 'eps^8' is supported");
    return std::pow(epsilon, 8.0);
}

SystemConfig build_system(const json& system, double epsilon) {
    const auto charges = require<std::vector<double>>(system, "charges");
    if (charges.empty()) throw ConfigError("system.charges: need at least one charge");
    std::vector<ParticleSpec> parts;
    parts.reserve(charges.size());
    for (double e : charges) parts.push_back({e});
    const double lambda = get_or<double>(system, "lambda_uv", 1.0);
    const double sigma = resolve_sigma(system, epsilon);
    return SystemConfig(std::move(parts), FormFactor(lambda, sigma), epsilon);
}

double single_epsilon(const json& system) {
    if (system.contains("epsilon_list"))
        throw ConfigError("this experiment needs a single 'epsilon', not 'epsilon_list'");
    return require<double>(system, "epsilon");
}

std::vector<std::string> trajectory_columns(std::size_t n_particles) {
    std::vector<std::string> cols{"t"};
    const char axis[3] = {'x', 'y', 'z'};
    for (std::size_t j = 0; j < n_particles; ++j)
        for (int a = 0; a < 3; ++a)
            cols.push_back("x_" + std::to_string(j) + "_" + axis[a]);
    for (std::size_t j = 0; j < n_particles; ++j)
        for (int a = 0; a < 3; ++a)
            cols.push_back("p_" + std::to_string(j) + "_" + axis[a]);
    cols.push_back("H_eff");
    return cols;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    const std::size_t np = traj.states.front().x.size();
    CsvWriter csv(path, trajectory_columns(np));
    std::vector<double> row;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        row.clear();
        row.push_back(traj.times[i]);
        for (const auto& x : traj.states[i].x) {
            row.push_back(x.x);
            row.push_back(x.y);
            row.push_back(x.z);
        }
        for (const auto& p : traj.states[i].p) {
            row.push_back(p.x);
            row.push_back(p.y);
            row.push_back(p.z);
        }
        row.push_back(traj.energies[i]);
        csv.row(row);
    }
}

// ---- experiments ----------------------------------------------------------

std::vector<std::string> run_potentials(const json& cfg, const std::filesystem::path& out) {
    const json& system = cfg.at("system");
    const json params = cfg.value("params", json::object());
    const SystemConfig sys = build_system(system, get_or<double>(system, "epsilon", 0.1));
    if (sys.size() < 2) throw ConfigError("potentials: need at least two charges");
    const double r_min = get_or<double>(params, "r_min", 0.0);
    const double r_max = get_or<double>(params, "r_max", 20.0);
    const std::size_t n = get_or<std::size_t>(params, "n_points", 200);
    if (!(r_max > r_min) || n < 2) throw ConfigError("potentials: bad r grid");

    const double e1 = sys.particles[0].charge, e2 = sys.particles[1].charge;
    CsvWriter csv(out / "potentials.csv", {"r", "V_12", "coulomb_reference"});
    for (std::size_t i = 0; i < n; ++i) {
        const double r = r_min + (r_max - r_min) * static_cast<double>(i) /
                                     static_cast<double>(n - 1);
        const double v = pair_potential(r, e1, e2, sys.form_factor);
        const double ref = (r > 0.0) ? -e1 * e2 / (4.0 * std::numbers::pi * r) : 0.0;
        csv.row(std::vector<double>{r, v, ref});
    }
    return {"potentials.csv"};
}

std::vector<std::string> run_trajectories(const json& cfg, const std::filesystem::path& out) {
    const json& system = cfg.at("system");
    const json& params = cfg.at("params");
    const SystemConfig sys = build_system(system, single_epsilon(system));
    PhaseSpacePoint start{parse_vec3_list(params, "positions"), parse_vec3_list(params, "momenta")};
    if (start.x.size() != sys.size())
        throw ConfigError("trajectories: positions count must match charges count");
    IntegratorConfig icfg;
    icfg.dt = get_or<double>(params, "dt", 1e-3);
    icfg.darwin_enabled = get_or<bool>(params, "darwin", false);
    icfg.stride = get_or<std::size_t>(params, "stride", 1);
    const double t_final = require<double>(params, "t_final");
    const Trajectory traj = classical_flow(start, t_final, icfg, sys);
    write_trajectory_csv(out / "trajectory.csv", traj);
    return {"trajectory.csv"};
}

std::vector<std::string> run_radiation(const json& cfg, const std::filesystem::path& out,
                                       std::uint64_t seed) {
    const json& system = cfg.at("system");
    const json& params = cfg.at("params");
    const double epsilon = single_epsilon(system);
    const SystemConfig sys = build_system(system, epsilon);

    const double lambda = sys.form_factor.lambda_uv;
    const double dt = get_or<double>(params, "dt", 0.999 * epsilon / (4.0 * lambda));
    const double t_final = require<double>(params, "t_final");
    const std::size_t stride = get_or<std::size_t>(params, "stride", 16);
    const bool dipole = get_or<bool>(params, "dipole_approx", true);

    TrajectoryEnsemble ens;
    const std::string preset = get_or<std::string>(params, "preset", "oscillator");
    if (preset == "oscillator") {
        const double amplitude = get_or<double>(params, "amplitude", 1.0);
        const double omega = get_or<double>(params, "omega", 1.0);
        if (sys.size() != 1) throw ConfigError("radiation oscillator preset: one charge only");
        ens.emplace_back(1.0, oscillator_trajectory(amplitude, omega, t_final, dt));
    } else if (preset == "flow") {
        PhaseSpacePoint center{parse_vec3_list(params, "positions"),
                               parse_vec3_list(params, "momenta")};
        const std::size_t n_members = get_or<std::size_t>(params, "ensemble_n", 1);
        const double pos_spread = get_or<double>(params, "pos_spread", 0.0);
        const double mom_spread = get_or<double>(params, "mom_spread", 0.0);
        const PhaseSpaceEnsemble samples =
            sample_wigner_gaussian(center, pos_spread, mom_spread, n_members, seed);
        IntegratorConfig icfg;
        icfg.dt = dt;
        ens = flow_ensemble(samples, t_final, icfg, sys);
    } else {
        throw ConfigError("radiation.preset: expected 'oscillator' or 'flow'");
    }

    const std::size_t n_radial = get_or<std::size_t>(params, "n_radial", 64);
    const std::size_t n_polar = get_or<std::size_t>(params, "n_polar", 6);
    const std::size_t n_azimuth = get_or<std::size_t>(params, "n_azimuth", 12);
    const ModeQuadrature quad = shell_quadrature(sys.form_factor, n_radial, n_polar, n_azimuth);

    const RadiationSeries series = radiation_series(ens, quad, sys, stride, dipole);
    {
        CsvWriter csv(out / "radiation.csv", {"t", "E_rad", "P_kernel", "P_larmor"});
        for (std::size_t i = 0; i < series.times.size(); ++i)
            csv.row(std::vector<double>{series.times[i], series.e_rad[i], series.p_kernel[i],
                                        series.p_larmor[i]});
    }
    {
        const auto spec = radiated_spectrum(series.times.back(), ens.front().second, sys,
                                            n_radial, n_polar, n_azimuth, dipole);
        CsvWriter csv(out / "spectral_density.csv", {"k", "dE_rad_dk"});
        for (const auto& [k, d] : spec) csv.row(std::vector<double>{k, d});
    }
    return {"radiation.csv", "spectral_density.csv"};
}

std::vector<std::string> run_spectrum(const json& cfg, const std::filesystem::path& out) {
    const json& system = cfg.at("system");
    const json& params = cfg.at("params");
    const SystemConfig sys = build_system(system, single_epsilon(system));
    if (!(sys.form_factor.sigma_ir > 0.0))
        throw ConfigError("spectrum: needs sigma > 0 (set system.sigma)");
    Configuration x = parse_vec3_list(params, "x");
    if (x.size() != sys.size()) throw ConfigError("spectrum: x count must match charges");
    const std::size_t n_max = get_or<std::size_t>(params, "n_max", 2);
    const std::size_t m_max = get_or<std::size_t>(params, "m_max", 2);
    const auto refinements = get_or<std::vector<std::vector<std::size_t>>>(
        params, "refinements", {{6, 4, 8}, {10, 6, 12}, {14, 8, 16}});

    const double e_exact = ground_energy(x, sys);
    CsvWriter csv(out / "fockbox_convergence.csv",
                  {"n_modes", "alpha_discrete", "lanczos_ground", "E_sigma_exact",
                   "alpha_error", "truncation_gap"});
    for (const auto& ref : refinements) {
        if (ref.size() != 3) throw ConfigError("spectrum.refinements: entries are [nr, np, na]");
        const ModeQuadrature mq = shell_quadrature(sys.form_factor, ref[0], ref[1], ref[2]);
        const ModeGrid grid = mode_grid_from_shell(mq);
        const FockBasis basis(grid.size(), n_max, m_max);
        std::vector<double> omega;
        for (const auto& m : grid.modes) omega.push_back(m.omega);
        const auto z = fibered_coupling(x, grid, sys);
        const double alpha = discrete_alpha(z, omega);
        const SparseOperator h = van_hove_hamiltonian(z, omega, basis);
        const LanczosResult ground = lanczos_ground_state(h, 1e-9, 600);
        csv.row(std::vector<double>{static_cast<double>(grid.size()), alpha, ground.energy,
                                    e_exact, std::abs(alpha - e_exact),
                                    ground.energy - alpha});
    }
    return {"fockbox_convergence.csv"};
}

std::vector<std::string> run_adiabatic(const json& cfg, const std::filesystem::path& out) {
    const json& params = cfg.at("params");
    ToyModelSpec base;
    base.length = get_or<double>(params, "length", base.length);
    base.n_x = get_or<std::size_t>(params, "n_x", base.n_x);
    base.n_modes = get_or<std::size_t>(params, "n_modes", base.n_modes);
    base.lambda_uv = get_or<double>(params, "lambda_uv", base.lambda_uv);
    base.charge = get_or<double>(params, "charge", base.charge);
    base.coupling_scale = get_or<double>(params, "coupling_scale", base.coupling_scale);
    base.n_max = get_or<std::size_t>(params, "n_max", base.n_max);
    base.m_max = get_or<std::size_t>(params, "m_max", base.m_max);
    base.packet_center = get_or<double>(params, "packet_center", base.packet_center);
    base.packet_width = get_or<double>(params, "packet_width", base.packet_width);
    base.momentum_scale = get_or<double>(params, "momentum_scale", base.momentum_scale);

    const auto epsilons = get_or<std::vector<double>>(params, "epsilons", {0.2, 0.1, 0.05});
    const auto sigmas = get_or<std::vector<double>>(params, "sigmas", {1e-1, 1e-2, 1e-3});
    const double t_final = get_or<double>(params, "t_final", 1.0);
    const std::size_t n_times = get_or<std::size_t>(params, "n_times", 4);
    const double tol = get_or<double>(params, "krylov_tol", 1e-9);

    const auto rows = leakage_scan(base, epsilons, sigmas, t_final, n_times, tol);
    CsvWriter csv(out / "adiabatic_scan.csv",
                  {"epsilon", "sigma", "t", "leakage_dressed", "leakage_bare", "norm_defect"});
    for (const auto& r : rows)
        csv.row(std::vector<double>{r.epsilon, r.sigma, r.t, r.leakage_dressed, r.leakage_bare,
                                    r.norm_defect});
    return {"adiabatic_scan.csv"};
}

std::vector<std::string> run_classical_field(const json& cfg, const std::filesystem::path& out) {
    const json& system = cfg.at("system");
    const json& params = cfg.at("params");
    const SystemConfig sys = build_system(system, single_epsilon(system));
    PhaseSpacePoint start{parse_vec3_list(params, "positions"), parse_vec3_list(params, "momenta")};
    const double t_macro = require<double>(params, "t_macro");
    const double dt_micro = get_or<double>(params, "dt_micro", 0.02);
    const std::size_t stride = get_or<std::size_t>(params, "stride", 50);
    const bool bare = get_or<bool>(params, "bare_field", false);
    const ModeQuadrature quad = shell_quadrature(sys.form_factor,
                                                 get_or<std::size_t>(params, "n_radial", 24),
                                                 get_or<std::size_t>(params, "n_polar", 12),
                                                 get_or<std::size_t>(params, "n_azimuth", 12));
    const ClassicalFieldSim sim(sys, quad);
    const Trajectory traj = sim.run(start, t_macro, dt_micro, stride, bare);
    write_trajectory_csv(out / "field_trajectory.csv", traj);

    // re-run the last segment cheaply for the final field spectrum
    CoupledState state = bare ? sim.bare_state(start) : sim.equilibrium_state(start);
    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(t_macro / sys.epsilon / dt_micro - 1e-12));
    const double dt = t_macro / sys.epsilon / static_cast<double>(n_steps);
    for (std::size_t i = 0; i < n_steps; ++i) sim.step(state, dt);
    CsvWriter csv(out / "field_spectrum.csv", {"k", "energy_density"});
    for (const auto& [k, e] : sim.field_spectrum(state)) csv.row(std::vector<double>{k, e});
    return {"field_trajectory.csv", "field_spectrum.csv"};
}

std::vector<std::string> run_scaling(const json& cfg, const std::filesystem::path& out,
                                     json& manifest_extra) {
    const json& system = cfg.at("system");
    const json& params = cfg.at("params");
    // epsilon comes from the study list; the system block still needs charges.
    const SystemConfig base = build_system(system, get_or<double>(system, "epsilon", 0.1));
    PhaseSpacePoint start{parse_vec3_list(params, "positions"), parse_vec3_list(params, "momenta")};
    ScalingStudyConfig study;
    study.epsilons = get_or<std::vector<double>>(params, "epsilons", study.epsilons);
    study.t_macro = get_or<double>(params, "t_macro", study.t_macro);
    study.dt_micro = get_or<double>(params, "dt_micro", study.dt_micro);
    study.dt_macro = get_or<double>(params, "dt_macro", study.dt_macro);
    study.n_radial = get_or<std::size_t>(params, "n_radial", study.n_radial);
    study.n_polar = get_or<std::size_t>(params, "n_polar", study.n_polar);
    study.n_azimuth = get_or<std::size_t>(params, "n_azimuth", study.n_azimuth);

    const auto rows = epsilon_scaling_study(base, start, study);
    CsvWriter csv(out / "scaling.csv", {"epsilon", "deviation_coulomb", "deviation_darwin"});
    std::vector<double> eps, devc;
    for (const auto& r : rows) {
        csv.row(std::vector<double>{r.epsilon, r.deviation_coulomb, r.deviation_darwin});
        eps.push_back(r.epsilon);
        devc.push_back(r.deviation_coulomb);
    }
    manifest_extra["coulomb_deviation_slope"] = log_log_slope(eps, devc);
    return {"scaling.csv"};
}

} // namespace

int run(const std::filesystem::path& config_path, const RunOverrides& overrides) {
    const auto t_start = std::chrono::steady_clock::now();
    json cfg;
    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config " << config_path << "\n";
            return 2;
        }
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        std::cerr << "error: config parse failure: " << e.what() << "\n";
        return 2;
    }

    try {
        const std::string experiment = overrides.experiment.has_value()
                                           ? *overrides.experiment
                                           : require<std::string>(cfg, "experiment");
        std::filesystem::path out_dir =
            overrides.out_dir.value_or(std::filesystem::path(get_or<std::string>(cfg, "output_dir", "out")));
        std::filesystem::create_directories(out_dir);
        const std::uint64_t seed =
            overrides.seed.value_or(get_or<std::uint64_t>(cfg, "seed", 0));
        const int threads = overrides.threads.value_or(get_or<int>(cfg, "threads", 0));
        thread_count() = threads;

        json resolved = cfg;
        resolved["experiment"] = experiment;
        resolved["seed"] = seed;
        resolved["threads"] = threads;
        resolved["output_dir"] = out_dir.string();

        json manifest_extra = json::object();
        std::vector<std::string> outputs;
        if (experiment == "potentials")
            outputs = run_potentials(resolved, out_dir);
        else if (experiment == "trajectories")
            outputs = run_trajectories(resolved, out_dir);
        else if (experiment == "radiation")
            outputs = run_radiation(resolved, out_dir, seed);
        else if (experiment == "spectrum")
            outputs = run_spectrum(resolved, out_dir);
        else if (experiment == "adiabatic")
            outputs = run_adiabatic(resolved, out_dir);
        else if (experiment == "classical-field")
            outputs = run_classical_field(resolved, out_dir);
        else if (experiment == "scaling")
            outputs = run_scaling(resolved, out_dir, manifest_extra);
        else
            throw ConfigError("unknown experiment '" + experiment + "'");

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        json manifest;
        manifest["version"] = kVersionString;
        manifest["config"] = resolved;
        manifest["outputs"] = outputs;
        manifest["wall_time_s"] = wall;
        if (!manifest_extra.empty()) manifest["results"] = manifest_extra;
        std::ofstream mf(out_dir / "manifest.json");
        mf << manifest.dump(2) << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace nelson
