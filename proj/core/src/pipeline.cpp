#include "diskfar/pipeline.hpp"

#include <chrono>

#include "diskfar/errors.hpp"

namespace diskfar {

const char* to_string(Metric m) { return m == Metric::eta_col ? "eta_col" : "eta"; }

const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::a: return "a";
        case SweepParameter::u: return "u";
        case SweepParameter::v: return "v";
        case SweepParameter::r_h: return "r_h";
        case SweepParameter::t: return "t";
        case SweepParameter::na: return "NA";
    }
    return "?";
}

Metric metric_from_string(const std::string& s) {
    if (s == "eta_col") return Metric::eta_col;
    if (s == "eta") return Metric::eta;
    throw InvalidParameter("unknown metric '" + s + "' (have eta_col, eta)");
}

SweepParameter sweep_parameter_from_string(const std::string& s) {
    if (s == "a") return SweepParameter::a;
    if (s == "u") return SweepParameter::u;
    if (s == "v") return SweepParameter::v;
    if (s == "r_h") return SweepParameter::r_h;
    if (s == "t") return SweepParameter::t;
    if (s == "NA" || s == "na") return SweepParameter::na;
    throw InvalidParameter("unknown sweep parameter '" + s + "' (have a, u, v, r_h, t, NA)");
}

void RunConfig::validate() const {
    disk.validate();
    lattice.validate();
    mode.validate();
    mode.resolved_r_peak(disk);
    if (near_field_source == NearFieldSource::file && near_field_path.empty())
        throw InvalidParameter("near-field source 'file' requires a path");
    if (!(grid_resolution_deg > 0.0) || grid_resolution_deg > 90.0)
        throw InvalidParameter("grid resolution must lie in (0, 90] degrees");
    if (na_values.empty()) throw InvalidParameter("at least one numerical aperture is required");
    for (double na : na_values)
        if (!(na > 0.0) || na > n_collect)
            throw InvalidParameter("numerical apertures must satisfy 0 < NA <= n_collect");
    if (!(n_collect > 0.0)) throw InvalidParameter("n_collect must be positive");
    if (!(purcell >= 0.0)) throw InvalidParameter("Purcell enhancement must be non-negative");
    if (!(dipole_length > 0.0)) throw InvalidParameter("dipole length must be positive");
    if (lattice_extent && !(*lattice_extent > 0.0))
        throw InvalidParameter("lattice extent must be positive");
    if (threads < 1) throw InvalidParameter("thread count must be >= 1");
    preset(color_center); // throws for unknown names
}

double RunConfig::extent() const {
    return lattice_extent.value_or(disk.r_d + 5.0 * mode.decay_length);
}

NearField build_nearfield(const RunConfig& cfg) {
    if (cfg.near_field_source == NearFieldSource::analytic) return analytic_mode(cfg.disk, cfg.mode);
    return import_nearfield(cfg.near_field_path);
}

SimulationResult run_simulation(const RunConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const auto holes = generate_lattice(cfg.lattice, cfg.extent());
    if (holes.empty()) throw NumericError("no lattice holes inside the configured extent");

    const NearField field = build_nearfield(cfg);
    const DipoleArray dipoles = sample_currents(field, holes, cfg.include_z, cfg.wavenumber(),
                                                cfg.impedance(), cfg.dipole_length);

    const SphericalGrid grid = SphericalGrid::full_sphere(cfg.grid_resolution_deg);
    FarFieldGrid ff = dipole_farfield(dipoles, grid, FarFieldMode::fraunhofer(), cfg.threads);

    SimulationResult result;
    result.dipole_count = dipoles.size();

    if (!cfg.reference_path.empty()) {
        const FarFieldGrid reference = read_farfield(cfg.reference_path);
        result.alpha = alpha_fit(ff, reference);
    }

    const ColorCenter center = preset(cfg.color_center);
    const double zpl = eta_zpl(cfg.purcell, center);
    for (double na : cfg.na_values) {
        const double col = collection_efficiency(ff, na, cfg.n_collect);
        result.reports.push_back(EfficiencyReport::make(
            cfg.purcell, zpl, col, na, result.alpha ? result.alpha->alpha : 1.0));
    }

    result.farfield = std::move(ff);
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

double evaluate_metric(const RunConfig& cfg, Metric metric) {
    cfg.validate();

    const auto holes = generate_lattice(cfg.lattice, cfg.extent());
    if (holes.empty()) throw NumericError("no lattice holes inside the configured extent");

    const NearField field = build_nearfield(cfg);
    const DipoleArray dipoles = sample_currents(field, holes, cfg.include_z, cfg.wavenumber(),
                                                cfg.impedance(), cfg.dipole_length);
    const SphericalGrid grid = SphericalGrid::full_sphere(cfg.grid_resolution_deg);
    const FarFieldGrid ff = dipole_farfield(dipoles, grid, FarFieldMode::fraunhofer(), cfg.threads);

    const double col = collection_efficiency(ff, cfg.na_values.front(), cfg.n_collect);
    if (metric == Metric::eta_col) return col;
    return eta_total(eta_zpl(cfg.purcell, preset(cfg.color_center)), col);
}

RunConfig with_param(RunConfig cfg, SweepParameter parameter, double value) {
    switch (parameter) {
        case SweepParameter::a: cfg.lattice.a = value; break;
        case SweepParameter::u: cfg.lattice.u = value; break;
        case SweepParameter::v: cfg.lattice.v = value; break;
        case SweepParameter::r_h: cfg.lattice.r_h = value; break;
        case SweepParameter::t: cfg.disk.t = value; break;
        case SweepParameter::na: cfg.na_values = {value}; break;
    }
    return cfg;
}

} // namespace diskfar
