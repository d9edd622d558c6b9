// Batch front-end: every experiment is a subcommand reading a JSON config
// and writing CSV artifacts plus a manifest. See README.md for the schema.

#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "nelson/runconfig.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out_dir;
    int threads = -1;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "JSON run configuration")->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--threads", args.threads, "worker threads, 0 = hardware");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides config)");
}

int dispatch(const CommonArgs& args, const std::string& experiment = {}) {
    nelson::RunOverrides ov;
    if (!args.out_dir.empty()) ov.out_dir = args.out_dir;
    if (args.threads >= 0) ov.threads = args.threads;
    if (args.seed >= 0) ov.seed = static_cast<std::uint64_t>(args.seed);
    if (!experiment.empty()) ov.experiment = experiment;
    return nelson::run(args.config, ov);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nelsonlab: dressed-particle dynamics, radiation and adiabatic experiments"};
    app.set_version_flag("--version", nelson::kVersionString);
    app.require_subcommand(0, 1);

    const char* names[] = {"potentials",      "trajectories", "radiation", "spectrum",
                           "adiabatic",       "classical-field", "scaling"};
    const char* descs[] = {
        "pair potential sweep",
        "effective classical flow",
        "radiated energy and power series",
        "truncated Fock-space spectrum validation",
        "dressed-subspace leakage scan",
        "full particle-field simulation",
        "effective-dynamics epsilon-scaling study",
    };
    CommonArgs args[7];
    for (int i = 0; i < 7; ++i) add_common(app.add_subcommand(names[i], descs[i]), args[i]);

    // `run` executes whatever experiment the config selects.
    CommonArgs generic;
    add_common(app.add_subcommand("run", "run the experiment named in the config"), generic);

    CLI11_PARSE(app, argc, argv);

    for (int i = 0; i < 7; ++i)
        if (app.get_subcommand(names[i])->parsed()) return dispatch(args[i], names[i]);
    if (app.get_subcommand("run")->parsed()) return dispatch(generic);
    app.exit(CLI::CallForHelp());
    return 0;
}
