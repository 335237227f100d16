#ifndef QGAUGE_COMMANDS_HPP
#define QGAUGE_COMMANDS_HPP

#include <string>
#include <vector>

#include "qgauge/analysis.hpp"

namespace qgauge {

// Exit codes of run_command / the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalFailure = 3;

struct CommandOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides; // key.path=value applied to the scenario JSON

    double kick = 0.002;
    std::string response_gauge = "length"; // length | velocity
    int max_harmonic = 7;
    double harmonic_tol = 0.05;
    GaugeCheckTolerances gauge_tol;
    VlTolerances vl_tol;
};

/// Dispatches one of: ground-state, evolve, gauge-check, vl-check, response,
/// harmonics. Writes the declared outputs under out_dir and returns the
/// process exit code.
int run_command(const std::string& subcommand, const CommandOptions& opts);

} // namespace qgauge

#endif
