// main.cpp - diskfar command-line front end.
//
// Exit codes: 0 success, 2 configuration/parse errors, 3 runtime/numeric
// errors (undefined power, missing bracket, out-of-domain queries).

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "commands.hpp"
#include "config_io.hpp"
#include "diskfar/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void write_error_json(const std::string& path, const std::string& type,
                      const std::string& message) {
    if (path.empty()) return;
    const nlohmann::json j = {{"error", {{"type", type}, {"message", message}}}};
    if (path == "-") {
        std::cout << j.dump() << "\n";
        return;
    }
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    using namespace diskfar;
    using namespace diskfar::cli;

    CLI::App app{"far-field emission solver and design optimizer for a "
                 "microdisk with a triangular-lattice hole grating"};
    app.require_subcommand(1);

    std::string config_path;
    std::string error_json_path;
    CommonOptions opts;
    std::uint64_t seed_flag = 0;
    int threads_flag = 0;
    std::vector<double> na_flag;
    bool include_z_flag = false;
    std::string reference_flag;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", config_path, "JSON run configuration");
        if (config_required) c->required();
        sub->add_option("--out", opts.out_dir, "output directory (created if missing)");
        sub->add_option("--error-json", error_json_path,
                        "write a machine-readable error report here on failure ('-' for stdout)");
        sub->add_option("--threads", threads_flag, "worker threads for far-field evaluation")
            ->check(CLI::PositiveNumber);
        return sub;
    };

    auto* sim = add_common(app.add_subcommand("simulate",
                                              "far-field pattern and efficiency report"),
                           true);
    sim->add_option("--na", na_flag, "numerical apertures (overrides config)");
    auto* sim_incz = sim->add_option("--include-z", include_z_flag,
                                     "keep the out-of-plane current component");
    auto* sim_ref = sim->add_option("--reference", reference_flag,
                                    "reference far-field pattern for the alpha fit");

    auto* swp = add_common(app.add_subcommand("sweep", "parameter sweep with argmax refinement"),
                           true);

    auto* rob = add_common(app.add_subcommand("robustness",
                                              "seeded Monte Carlo over fabrication parameters"),
                           true);
    auto* rob_seed = rob->add_option("--seed", seed_flag, "random seed (overrides config)");

    auto* fit = add_common(app.add_subcommand("fit-alpha",
                                              "least-squares scale against a reference pattern"),
                           true);
    auto* fit_ref = fit->add_option("--reference", reference_flag,
                                    "reference far-field pattern (overrides config)");

    auto* trc = app.add_subcommand("trace-info", "hexagonal trace geometry report");
    int trace_n = 3;
    double trace_a = 1.0;
    trc->add_option("n", trace_n, "trace index (>= 1)")->required();
    auto* trc_a = trc->add_option("--lattice-constant", trace_a, "lattice constant in lambda0");
    add_common(trc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code != 0) {
            write_error_json(error_json_path, "cli", e.what());
            return kExitConfig;
        }
        return 0; // --help and friends
    }

    try {
        if (threads_flag > 0) opts.threads = threads_flag;
        if (!na_flag.empty()) opts.na_list = na_flag;
        if (sim_incz->count() > 0) opts.include_z = include_z_flag;
        if (sim_ref->count() > 0 || fit_ref->count() > 0) opts.reference = reference_flag;
        if (rob_seed->count() > 0) opts.seed = seed_flag;

        std::optional<CliConfig> cfg;
        if (!config_path.empty()) cfg = effective_config(load_config(config_path), opts);

        if (sim->parsed()) return cmd_simulate(*cfg, opts);
        if (swp->parsed()) return cmd_sweep(*cfg, opts);
        if (rob->parsed()) return cmd_robustness(*cfg, opts);
        if (fit->parsed()) return cmd_fit_alpha(*cfg, opts);
        if (trc->parsed()) {
            if (!cfg && trc_a->count() == 0)
                throw InvalidParameter("trace-info needs --lattice-constant or --config");
            return cmd_trace_info(trace_n, trace_a, cfg, opts);
        }
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        write_error_json(error_json_path, "parse", e.what());
        return kExitConfig;
    } catch (const InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        write_error_json(error_json_path, "invalid-parameter", e.what());
        return kExitConfig;
    } catch (const NoBracketError& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        write_error_json(error_json_path, "no-bracket", e.what());
        return kExitRuntime;
    } catch (const DomainError& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        write_error_json(error_json_path, "domain", e.what());
        return kExitRuntime;
    } catch (const NumericError& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        write_error_json(error_json_path, "numeric", e.what());
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        write_error_json(error_json_path, "internal", e.what());
        return kExitRuntime;
    }
}
