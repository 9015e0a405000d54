#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxladder {

// Bad or inconsistent experiment parameters.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// key = value pairs (later lines win), '#' comments; `kind` names the experiment.
struct ExperimentConfig {
    std::string kind;
    std::map<std::string, std::string> values;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

// Exit-code policy: 0 success, 2 configuration errors, 3 numerical failures.
int error_exit_code(const std::exception& e);

// Run one experiment, writing CSV outputs plus a re-ingestable run-manifest.txt
// into `outdir`.  Exceptions propagate to the caller.
void run_experiment(const ExperimentConfig& cfg, const std::string& outdir);

// Full command-line driver (subcommands bands, gs-scan, current-map, dynamics,
// short-time, rwa-check, prepare; options --config/--out/--threads/--set).
int run_cli(const std::vector<std::string>& args);
int cli_main(int argc, char** argv);

}  // namespace fluxladder
