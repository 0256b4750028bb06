// config_io.hpp - JSON run configuration: loading, validation, canonical
// serialization and hashing. All lengths in units of lambda0, angles in
// degrees.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "diskfar/optimizer.hpp"
#include "diskfar/pipeline.hpp"

namespace diskfar::cli {

/// Full command-line run description: the pipeline config plus the optional
/// sweep / robustness sections.
struct CliConfig {
    RunConfig run;
    std::optional<SweepSpec> sweep;
    double sweep_refine_tolerance = 1e-3;
    std::optional<RobustnessSpec> robustness;
};

/// Parse and validate a config file. Relative file references are resolved
/// against the config's directory; referenced files must exist.
CliConfig load_config(const std::filesystem::path& path);

/// Canonical JSON image of the effective configuration (sorted keys); the
/// basis for the config hash recorded in every output.
nlohmann::json config_to_json(const CliConfig& cfg);

/// FNV-1a over the canonical dump, rendered as 0x-prefixed hex.
std::string config_hash(const CliConfig& cfg);

} // namespace diskfar::cli
