// pipeline.hpp - run configuration and the geometry -> mode -> currents ->
// far field -> efficiency evaluation chain shared by the CLI and optimizer.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diskfar/efficiency.hpp"
#include "diskfar/lattice.hpp"
#include "diskfar/nearfield.hpp"
#include "diskfar/radiation.hpp"

namespace diskfar {

enum class Metric { eta_col, eta };
enum class SweepParameter { a, u, v, r_h, t, na };

const char* to_string(Metric m);
const char* to_string(SweepParameter p);
Metric metric_from_string(const std::string& s);
SweepParameter sweep_parameter_from_string(const std::string& s);

enum class NearFieldSource { analytic, file };

/// One complete run description. All lengths in units of lambda0, angles in
/// degrees at the configuration surface.
struct RunConfig {
    DiskSpec disk{1.5427, 0.9411, 1.45, 2.4, 1.4};
    LatticeSpec lattice{0.5168, 0.2, 0.2931, 0.0, 0.0};
    ModeSpec mode{};

    NearFieldSource near_field_source = NearFieldSource::analytic;
    std::string near_field_path;

    double grid_resolution_deg = 0.5;
    std::vector<double> na_values{0.7};
    double n_collect = 1.4;
    bool include_z = false;
    std::string color_center = "SnV";
    double purcell = 52.6;
    double dipole_length = 0.01;
    std::string reference_path;            // optional far-field pattern to fit alpha against
    std::optional<double> lattice_extent;  // default: r_d + 5 * decay_length
    int threads = 1;

    void validate() const;

    double extent() const;
    /// Wavenumber of the scattered light in the substrate, rad per lambda0.
    double wavenumber() const { return 2.0 * pi * disk.n_sub / mode.lambda0; }
    double impedance() const { return vacuum_impedance / disk.n_sub; }
};

NearField build_nearfield(const RunConfig& cfg);

struct SimulationResult {
    FarFieldGrid farfield;
    std::size_t dipole_count = 0;
    std::vector<EfficiencyReport> reports; // one per configured NA
    std::optional<AlphaFit> alpha;
    double elapsed_seconds = 0.0;
};

/// Full pipeline run: lattice, near-field sampling, far field, efficiency
/// reports (and the alpha fit when a reference pattern is configured).
SimulationResult run_simulation(const RunConfig& cfg);

/// Scalar objective used by sweeps and robustness sampling; evaluated at the
/// first configured numerical aperture.
double evaluate_metric(const RunConfig& cfg, Metric metric);

/// Copy of cfg with one named parameter replaced.
RunConfig with_param(RunConfig cfg, SweepParameter parameter, double value);

} // namespace diskfar
