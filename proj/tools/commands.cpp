#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "diskfar/errors.hpp"

namespace diskfar::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw ParseError("write failure on '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

json na_reports_json(const std::vector<EfficiencyReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports)
        arr.push_back({{"na", r.na},
                       {"eta_col", r.eta_col},
                       {"eta_zpl", r.eta_zpl},
                       {"eta", r.eta},
                       {"purcell", r.purcell},
                       {"alpha", r.alpha}});
    return arr;
}

} // namespace

CliConfig effective_config(CliConfig cfg, const CommonOptions& opts) {
    if (opts.threads) cfg.run.threads = *opts.threads;
    if (opts.na_list) cfg.run.na_values = *opts.na_list;
    if (opts.include_z) cfg.run.include_z = *opts.include_z;
    if (opts.reference) {
        if (!std::filesystem::exists(*opts.reference))
            throw ParseError("reference file '" + *opts.reference + "' does not exist");
        cfg.run.reference_path = *opts.reference;
    }
    if (opts.seed) {
        if (!cfg.robustness) cfg.robustness.emplace();
        cfg.robustness->seed = *opts.seed;
    }
    cfg.run.validate();
    return cfg;
}

int cmd_simulate(const CliConfig& cfg, const CommonOptions& opts) {
    std::filesystem::create_directories(opts.out_dir);
    const std::string hash = config_hash(cfg);

    const SimulationResult result = run_simulation(cfg.run);
    const auto ff_path = opts.out_dir / "farfield.txt";
    write_farfield(ff_path, result.farfield);

    json report = {{"config_hash", hash},
                   {"dipole_count", result.dipole_count},
                   {"color_center", cfg.run.color_center},
                   {"include_z", cfg.run.include_z},
                   {"n_collect", cfg.run.n_collect},
                   {"grid_resolution_deg", cfg.run.grid_resolution_deg},
                   {"farfield_file", "farfield.txt"},
                   {"reports", na_reports_json(result.reports)}};
    if (result.alpha)
        report["alpha_fit"] = {{"alpha", result.alpha->alpha},
                               {"rmse", result.alpha->rmse},
                               {"theta_max_deg", rad2deg(result.alpha->theta_max)}};
    write_json(opts.out_dir / "report.json", report);

    std::cout << "simulate: " << result.dipole_count << " dipoles, "
              << result.farfield.grid.ntheta << "x" << result.farfield.grid.nphi
              << " grid, " << result.elapsed_seconds << " s\n";
    for (const auto& r : result.reports)
        std::cout << "  NA " << r.na << ": eta_col " << r.eta_col << ", eta_zpl " << r.eta_zpl
                  << ", eta " << r.eta << "\n";
    if (result.alpha)
        std::cout << "  alpha " << result.alpha->alpha << " (rmse " << result.alpha->rmse
                  << " up to " << rad2deg(result.alpha->theta_max) << " deg)\n";
    std::cout << "  wrote " << (opts.out_dir / "report.json").string() << ", "
              << ff_path.string() << "\n";
    return 0;
}

int cmd_sweep(const CliConfig& cfg, const CommonOptions& opts) {
    if (!cfg.sweep) throw InvalidParameter("config has no sweep section");
    std::filesystem::create_directories(opts.out_dir);
    const std::string hash = config_hash(cfg);

    const SweepResult result = sweep(*cfg.sweep, cfg.run);

    std::string csv = "# config_hash=" + hash + "\nparam,value,metric\n";
    for (const auto& p : result.points) {
        csv += to_string(cfg.sweep->parameter);
        csv += ',';
        csv += fmt(p.value);
        csv += ',';
        csv += p.ok ? fmt(p.metric) : "nan";
        csv += '\n';
    }
    write_text(opts.out_dir / "sweep.csv", csv);

    json summary = {{"config_hash", hash},
                    {"parameter", to_string(cfg.sweep->parameter)},
                    {"metric", to_string(cfg.sweep->metric)},
                    {"lo", cfg.sweep->lo},
                    {"hi", cfg.sweep->hi},
                    {"count", cfg.sweep->count},
                    {"argmax", {{"index", result.argmax_index},
                                {"value", result.argmax_value},
                                {"metric", result.argmax_metric}}},
                    {"csv", "sweep.csv"}};
    json failures = json::array();
    for (std::size_t i = 0; i < result.points.size(); ++i)
        if (!result.points[i].ok)
            failures.push_back(
                {{"index", i}, {"value", result.points[i].value}, {"error", result.points[i].error}});
    summary["failures"] = failures;

    try {
        const RefineResult refined = refine_argmax(result, cfg.run, cfg.sweep_refine_tolerance);
        summary["refined"] = {{"parameter", refined.parameter},
                              {"metric", refined.metric},
                              {"interval", {refined.interval_lo, refined.interval_hi}},
                              {"evaluations", refined.evaluations},
                              {"relative_tolerance", cfg.sweep_refine_tolerance}};
    } catch (const NoBracketError& e) {
        summary["refined"] = nullptr;
        summary["refine_note"] = e.what();
    }
    write_json(opts.out_dir / "sweep_summary.json", summary);

    std::cout << "sweep " << to_string(cfg.sweep->parameter) << " in [" << cfg.sweep->lo << ", "
              << cfg.sweep->hi << "]: argmax " << result.argmax_value << " -> "
              << result.argmax_metric << "\n";
    if (summary.contains("refined") && !summary["refined"].is_null())
        std::cout << "  refined: " << summary["refined"]["parameter"].get<double>() << " -> "
                  << summary["refined"]["metric"].get<double>() << "\n";
    std::cout << "  wrote " << (opts.out_dir / "sweep.csv").string() << ", "
              << (opts.out_dir / "sweep_summary.json").string() << "\n";
    return 0;
}

int cmd_robustness(const CliConfig& cfg, const CommonOptions& opts) {
    if (!cfg.robustness) throw InvalidParameter("config has no robustness section");
    std::filesystem::create_directories(opts.out_dir);
    const std::string hash = config_hash(cfg);

    const RobustnessResult result = robustness(*cfg.robustness, cfg.run);

    std::string samples = "# config_hash=" + hash +
                          "\nindex,a,u,v,u_canonical,v_canonical,r_h,t,metric,ok\n";
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
        const auto& s = result.samples[i];
        samples += std::to_string(i);
        for (double v : {s.a, s.u, s.v, s.u_canonical, s.v_canonical, s.r_h, s.t}) {
            samples += ',';
            samples += fmt(v);
        }
        samples += ',';
        samples += s.ok ? fmt(s.metric) : "nan";
        samples += ',';
        samples += s.ok ? '1' : '0';
        samples += '\n';
    }
    write_text(opts.out_dir / "robustness_samples.csv", samples);

    std::string cumulative = "# config_hash=" + hash + "\nthreshold,fraction\n";
    for (const auto& [threshold, fraction] : result.cumulative) {
        cumulative += fmt(threshold);
        cumulative += ',';
        cumulative += fmt(fraction);
        cumulative += '\n';
    }
    write_text(opts.out_dir / "robustness_cumulative.csv", cumulative);

    write_json(opts.out_dir / "robustness_summary.json",
               {{"config_hash", hash},
                {"count", cfg.robustness->count},
                {"seed", result.seed},
                {"metric", to_string(cfg.robustness->metric)},
                {"failure_count", result.failure_count},
                {"samples_csv", "robustness_samples.csv"},
                {"cumulative_csv", "robustness_cumulative.csv"}});

    std::cout << "robustness: " << cfg.robustness->count << " samples, seed " << result.seed
              << ", " << result.failure_count << " failures\n";
    std::cout << "  wrote " << (opts.out_dir / "robustness_samples.csv").string() << ", "
              << (opts.out_dir / "robustness_cumulative.csv").string() << ", "
              << (opts.out_dir / "robustness_summary.json").string() << "\n";
    return 0;
}

int cmd_fit_alpha(const CliConfig& cfg, const CommonOptions& opts) {
    if (cfg.run.reference_path.empty())
        throw InvalidParameter("fit-alpha needs a reference far-field file "
                               "(config 'reference' or --reference)");
    std::filesystem::create_directories(opts.out_dir);

    const SimulationResult result = run_simulation(cfg.run);
    if (!result.alpha) throw NumericError("alpha fit did not run");

    write_json(opts.out_dir / "alpha.json",
               {{"config_hash", config_hash(cfg)},
                {"alpha", result.alpha->alpha},
                {"rmse", result.alpha->rmse},
                {"theta_max_deg", rad2deg(result.alpha->theta_max)},
                {"reference", cfg.run.reference_path}});

    std::cout << "alpha " << result.alpha->alpha << ", rmse " << result.alpha->rmse
              << " (fit up to " << rad2deg(result.alpha->theta_max) << " deg)\n";
    std::cout << "  wrote " << (opts.out_dir / "alpha.json").string() << "\n";
    return 0;
}

int cmd_trace_info(int n, double lattice_constant, const std::optional<CliConfig>& cfg,
                   const CommonOptions& opts) {
    const double a = cfg ? cfg->run.lattice.a : lattice_constant;
    const auto trace = hex_trace(n, a);

    // group points by distance
    std::vector<std::pair<double, int>> groups;
    for (const auto& p : trace) {
        bool found = false;
        for (auto& [r, count] : groups)
            if (std::abs(r - p.distance) < 1e-9 * a) {
                ++count;
                found = true;
                break;
            }
        if (!found) groups.emplace_back(p.distance, 1);
    }

    std::vector<double> overlap;
    if (cfg) {
        const NearField field = build_nearfield(cfg->run);
        std::vector<HolePosition> holes;
        for (const auto& p : trace) holes.push_back({p.x, p.y, n});
        for (const auto& e : overlap_report(field, holes)) overlap.push_back(e.magnitude);
    }

    std::cout << "trace " << n << " of lattice a=" << a << ": " << trace.size() << " points\n";
    for (const auto& [r, count] : groups)
        std::cout << "  " << count << " at distance " << r << " (" << r / a << " a)\n";
    if (!overlap.empty()) {
        double lo = 1e300, hi = 0.0;
        for (double m : overlap) {
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        std::cout << "  mode overlap |E| (normalized): min " << lo << ", max " << hi << "\n";
    }

    json points = json::array();
    for (std::size_t i = 0; i < trace.size(); ++i) {
        json p = {{"x", trace[i].x}, {"y", trace[i].y}, {"distance", trace[i].distance}};
        if (!overlap.empty()) p["overlap"] = overlap[i];
        points.push_back(p);
    }
    json groups_json = json::array();
    for (const auto& [r, count] : groups)
        groups_json.push_back({{"distance", r}, {"count", count}});
    json out = {{"n", n}, {"a", a}, {"count", trace.size()}, {"groups", groups_json},
                {"points", points}};
    if (cfg) out["config_hash"] = config_hash(*cfg);

    std::filesystem::create_directories(opts.out_dir);
    write_json(opts.out_dir / "trace_info.json", out);
    std::cout << "  wrote " << (opts.out_dir / "trace_info.json").string() << "\n";
    return 0;
}

} // namespace diskfar::cli
