// commands.hpp - the five CLI entry points; each writes plot-ready files into
// the output directory and prints a short summary to stdout.
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "config_io.hpp"

namespace diskfar::cli {

struct CommonOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;          // overrides robustness.seed
    std::optional<int> threads;
    std::optional<std::vector<double>> na_list; // overrides config na
    std::optional<bool> include_z;
    std::optional<std::string> reference;       // overrides config reference
};

/// Applies CLI overrides onto a loaded config.
CliConfig effective_config(CliConfig cfg, const CommonOptions& opts);

// Each command returns the process exit code (0 on success); errors are
// reported by exception and mapped in main.
int cmd_simulate(const CliConfig& cfg, const CommonOptions& opts);
int cmd_sweep(const CliConfig& cfg, const CommonOptions& opts);
int cmd_robustness(const CliConfig& cfg, const CommonOptions& opts);
int cmd_fit_alpha(const CliConfig& cfg, const CommonOptions& opts);
int cmd_trace_info(int n, double lattice_constant, const std::optional<CliConfig>& cfg,
                   const CommonOptions& opts);

} // namespace diskfar::cli
