#include "config_io.hpp"

#include <cstdio>
#include <fstream>

#include "diskfar/errors.hpp"

namespace diskfar::cli {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) {
                known = true;
                break;
            }
        if (!known)
            throw ParseError(std::string("config: unknown key '") + key + "' in " + where);
    }
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ParseError(std::string("config: '") + key + "' must be a number");
    return obj[key].get<double>();
}

Distribution parse_distribution(const json& obj, const std::string& param) {
    reject_unknown_keys(obj, ("robustness.parameters." + param).c_str(),
                        {"dist", "mean", "sd", "lo", "hi"});
    const std::string kind = obj.value("dist", "");
    Distribution d;
    if (kind == "uniform") {
        d.kind = Distribution::Kind::uniform;
        if (!obj.contains("lo") || !obj.contains("hi"))
            throw ParseError("config: uniform distribution for '" + param + "' needs lo and hi");
        d.p1 = obj["lo"].get<double>();
        d.p2 = obj["hi"].get<double>();
    } else if (kind == "normal") {
        d.kind = Distribution::Kind::normal;
        if (!obj.contains("mean") || !obj.contains("sd"))
            throw ParseError("config: normal distribution for '" + param + "' needs mean and sd");
        d.p1 = obj["mean"].get<double>();
        d.p2 = obj["sd"].get<double>();
    } else {
        throw ParseError("config: distribution for '" + param + "' must be uniform or normal");
    }
    return d;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& ref) {
    const std::filesystem::path p(ref);
    return p.is_absolute() ? p : base / p;
}

} // namespace

CliConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("config '" + path.string() + "': " + e.what());
    }
    const auto base_dir = path.has_parent_path() ? path.parent_path()
                                                 : std::filesystem::path(".");

    reject_unknown_keys(root, "top level",
                        {"disk", "lattice", "mode", "near_field", "grid_resolution_deg", "na",
                         "n_collect", "include_z", "color_center", "purcell", "dipole_length",
                         "reference", "lattice_extent", "threads", "sweep", "robustness"});

    CliConfig cfg;
    RunConfig& run = cfg.run;

    if (root.contains("disk")) {
        const json& d = root["disk"];
        reject_unknown_keys(d, "disk", {"r_d", "t", "r_u", "n_disk", "n_sub"});
        run.disk.r_d = get_num(d, "r_d", run.disk.r_d);
        run.disk.t = get_num(d, "t", run.disk.t);
        run.disk.r_u = get_num(d, "r_u", run.disk.r_u);
        run.disk.n_disk = get_num(d, "n_disk", run.disk.n_disk);
        run.disk.n_sub = get_num(d, "n_sub", run.disk.n_sub);
    }
    if (root.contains("lattice")) {
        const json& l = root["lattice"];
        reject_unknown_keys(l, "lattice", {"a", "r_h", "d", "u", "v"});
        run.lattice.a = get_num(l, "a", run.lattice.a);
        run.lattice.r_h = get_num(l, "r_h", run.lattice.r_h);
        run.lattice.d = get_num(l, "d", run.lattice.d);
        run.lattice.u = get_num(l, "u", run.lattice.u);
        run.lattice.v = get_num(l, "v", run.lattice.v);
    }
    if (root.contains("mode")) {
        const json& m = root["mode"];
        reject_unknown_keys(m, "mode",
                            {"m", "lambda0", "polarization", "r_peak", "radial_width",
                             "decay_length", "standing_wave"});
        if (m.contains("m")) run.mode.m = m["m"].get<int>();
        run.mode.lambda0 = get_num(m, "lambda0", run.mode.lambda0);
        if (m.contains("polarization")) {
            const std::string pol = m["polarization"].get<std::string>();
            if (pol == "azimuthal")
                run.mode.polarization = Polarization::azimuthal;
            else if (pol == "radial")
                run.mode.polarization = Polarization::radial;
            else
                throw ParseError("config: mode.polarization must be azimuthal or radial");
        }
        if (m.contains("r_peak") && !m["r_peak"].is_null())
            run.mode.r_peak = m["r_peak"].get<double>();
        run.mode.radial_width = get_num(m, "radial_width", run.mode.radial_width);
        run.mode.decay_length = get_num(m, "decay_length", run.mode.decay_length);
        if (m.contains("standing_wave")) run.mode.standing_wave = m["standing_wave"].get<bool>();
    }
    if (root.contains("near_field")) {
        const json& nf = root["near_field"];
        reject_unknown_keys(nf, "near_field", {"source", "path"});
        const std::string source = nf.value("source", "analytic");
        if (source == "analytic") {
            if (nf.contains("path"))
                throw ParseError("config: near_field.path is only valid with source 'file'");
            run.near_field_source = NearFieldSource::analytic;
        } else if (source == "file") {
            run.near_field_source = NearFieldSource::file;
            if (!nf.contains("path")) throw ParseError("config: near_field.source 'file' needs a path");
            run.near_field_path = resolve(base_dir, nf["path"].get<std::string>()).string();
            if (!std::filesystem::exists(run.near_field_path))
                throw ParseError("config: near-field file '" + run.near_field_path +
                                 "' does not exist");
        } else {
            throw ParseError("config: near_field.source must be 'analytic' or 'file'");
        }
    }
    run.grid_resolution_deg = get_num(root, "grid_resolution_deg", run.grid_resolution_deg);
    if (root.contains("na")) {
        if (!root["na"].is_array() || root["na"].empty())
            throw ParseError("config: na must be a non-empty array of numbers");
        run.na_values.clear();
        for (const auto& v : root["na"]) run.na_values.push_back(v.get<double>());
    }
    run.n_collect = get_num(root, "n_collect", run.n_collect);
    if (root.contains("include_z")) run.include_z = root["include_z"].get<bool>();
    if (root.contains("color_center")) run.color_center = root["color_center"].get<std::string>();
    run.purcell = get_num(root, "purcell", run.purcell);
    run.dipole_length = get_num(root, "dipole_length", run.dipole_length);
    if (root.contains("reference")) {
        run.reference_path = resolve(base_dir, root["reference"].get<std::string>()).string();
        if (!std::filesystem::exists(run.reference_path))
            throw ParseError("config: reference file '" + run.reference_path + "' does not exist");
    }
    if (root.contains("lattice_extent") && !root["lattice_extent"].is_null())
        run.lattice_extent = root["lattice_extent"].get<double>();
    if (root.contains("threads")) run.threads = root["threads"].get<int>();

    if (root.contains("sweep")) {
        const json& s = root["sweep"];
        reject_unknown_keys(s, "sweep",
                            {"parameter", "lo", "hi", "count", "metric", "refine_tolerance"});
        SweepSpec spec;
        if (!s.contains("parameter") || !s.contains("lo") || !s.contains("hi") ||
            !s.contains("count"))
            throw ParseError("config: sweep needs parameter, lo, hi, count");
        spec.parameter = sweep_parameter_from_string(s["parameter"].get<std::string>());
        spec.lo = s["lo"].get<double>();
        spec.hi = s["hi"].get<double>();
        spec.count = s["count"].get<int>();
        if (s.contains("metric")) spec.metric = metric_from_string(s["metric"].get<std::string>());
        cfg.sweep = spec;
        cfg.sweep_refine_tolerance = get_num(s, "refine_tolerance", cfg.sweep_refine_tolerance);
    }

    if (root.contains("robustness")) {
        const json& r = root["robustness"];
        reject_unknown_keys(r, "robustness",
                            {"count", "seed", "metric", "alignment", "thresholds", "parameters"});
        RobustnessSpec spec;
        if (r.contains("count")) spec.count = r["count"].get<int>();
        if (r.contains("seed")) spec.seed = r["seed"].get<std::uint64_t>();
        if (r.contains("metric")) spec.metric = metric_from_string(r["metric"].get<std::string>());
        if (r.contains("alignment")) {
            const std::string al = r["alignment"].get<std::string>();
            if (al != "cell_uniform")
                throw ParseError("config: robustness.alignment must be 'cell_uniform' when set");
            spec.alignment_cell_uniform = true;
        }
        if (r.contains("thresholds")) {
            const json& t = r["thresholds"];
            if (t.is_array()) {
                for (const auto& v : t) spec.thresholds.push_back(v.get<double>());
            } else {
                reject_unknown_keys(t, "robustness.thresholds", {"lo", "hi", "count"});
                const double lo = t.value("lo", 0.0), hi = t.value("hi", 1.0);
                const int n = t.value("count", 101);
                if (n < 2 || !(hi > lo))
                    throw ParseError("config: robustness.thresholds needs lo < hi and count >= 2");
                for (int i = 0; i < n; ++i)
                    spec.thresholds.push_back(lo + i * (hi - lo) / (n - 1));
            }
        }
        if (r.contains("parameters")) {
            for (const auto& [name, dist] : r["parameters"].items())
                spec.parameters[sweep_parameter_from_string(name)] =
                    parse_distribution(dist, name);
        }
        cfg.robustness = spec;
    }

    run.validate(); // throws InvalidParameter for out-of-range values
    return cfg;
}

nlohmann::json config_to_json(const CliConfig& cfg) {
    const RunConfig& run = cfg.run;
    json root;
    root["disk"] = {{"r_d", run.disk.r_d},
                    {"t", run.disk.t},
                    {"r_u", run.disk.r_u},
                    {"n_disk", run.disk.n_disk},
                    {"n_sub", run.disk.n_sub}};
    root["lattice"] = {{"a", run.lattice.a},
                       {"r_h", run.lattice.r_h},
                       {"d", run.lattice.d},
                       {"u", run.lattice.u},
                       {"v", run.lattice.v}};
    json mode = {{"m", run.mode.m},
                 {"lambda0", run.mode.lambda0},
                 {"polarization",
                  run.mode.polarization == Polarization::azimuthal ? "azimuthal" : "radial"},
                 {"radial_width", run.mode.radial_width},
                 {"decay_length", run.mode.decay_length},
                 {"standing_wave", run.mode.standing_wave}};
    if (run.mode.r_peak) mode["r_peak"] = *run.mode.r_peak;
    root["mode"] = mode;
    json nf = {{"source", run.near_field_source == NearFieldSource::analytic ? "analytic" : "file"}};
    if (run.near_field_source == NearFieldSource::file) nf["path"] = run.near_field_path;
    root["near_field"] = nf;
    root["grid_resolution_deg"] = run.grid_resolution_deg;
    root["na"] = run.na_values;
    root["n_collect"] = run.n_collect;
    root["include_z"] = run.include_z;
    root["color_center"] = run.color_center;
    root["purcell"] = run.purcell;
    root["dipole_length"] = run.dipole_length;
    if (!run.reference_path.empty()) root["reference"] = run.reference_path;
    if (run.lattice_extent) root["lattice_extent"] = *run.lattice_extent;
    root["threads"] = run.threads;

    if (cfg.sweep) {
        root["sweep"] = {{"parameter", to_string(cfg.sweep->parameter)},
                         {"lo", cfg.sweep->lo},
                         {"hi", cfg.sweep->hi},
                         {"count", cfg.sweep->count},
                         {"metric", to_string(cfg.sweep->metric)},
                         {"refine_tolerance", cfg.sweep_refine_tolerance}};
    }
    if (cfg.robustness) {
        json params = json::object();
        for (const auto& [p, d] : cfg.robustness->parameters) {
            if (d.kind == Distribution::Kind::uniform)
                params[to_string(p)] = {{"dist", "uniform"}, {"lo", d.p1}, {"hi", d.p2}};
            else
                params[to_string(p)] = {{"dist", "normal"}, {"mean", d.p1}, {"sd", d.p2}};
        }
        json rb = {{"count", cfg.robustness->count},
                   {"metric", to_string(cfg.robustness->metric)},
                   {"parameters", params}};
        if (cfg.robustness->seed) rb["seed"] = *cfg.robustness->seed;
        if (cfg.robustness->alignment_cell_uniform) rb["alignment"] = "cell_uniform";
        if (!cfg.robustness->thresholds.empty()) rb["thresholds"] = cfg.robustness->thresholds;
        root["robustness"] = rb;
    }
    return root;
}

std::string config_hash(const CliConfig& cfg) {
    const std::string dump = config_to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace diskfar::cli
