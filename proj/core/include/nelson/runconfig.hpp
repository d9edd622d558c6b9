#ifndef NELSON_RUNCONFIG_HPP
#define NELSON_RUNCONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace nelson {

inline constexpr const char* kVersionString = "nelsonlab 0.1.0";

// Command-line overrides applied on top of the config file.
struct RunOverrides {
    std::optional<std::filesystem::path> out_dir;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> experiment; // subcommand name, if given
};

// Parses and validates the JSON run configuration, executes the selected
// experiment (potentials | trajectories | radiation | spectrum | adiabatic |
// classical-field | scaling), writes the CSV artifacts plus a manifest.json
// with the fully resolved configuration. Returns a process exit status;
// diagnostics go to stderr.
int run(const std::filesystem::path& config_path, const RunOverrides& overrides);

} // namespace nelson

#endif
