// spinstar — command line front end for the spin-star dynamics library.
//
// Subcommands: simulate, reduce, verify, sweep. Exit codes: 0 success,
// 1 validation error, 2 suite failure, 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "spinstar/closedform.hpp"
#include "spinstar/errors.hpp"
#include "spinstar/scenario.hpp"
#include "spinstar/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSuiteFailure = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    std::optional<int> samples;
    std::optional<double> tolerance;
};

void add_scenario_options(CLI::App* cmd, CommonOptions& opts) {
    auto* config = cmd->add_option("--config", opts.config_path,
                                   "Path to a scenario config (JSON)");
    auto* preset = cmd->add_option("--preset", opts.preset,
                                   "Named preset (fig2, lh1, ...) or path");
    config->excludes(preset);
    cmd->add_option("--out", opts.out_dir, "Output directory")
        ->capture_default_str();
    cmd->add_option("--samples", opts.samples, "Override the sample count");
    cmd->add_option("--tolerance", opts.tolerance,
                    "Override the symmetry tolerance");
}

spinstar::ScenarioConfig load_scenario(const CommonOptions& opts) {
    if (opts.config_path.empty() && opts.preset.empty()) {
        throw spinstar::ValidationError("either --config or --preset is required");
    }
    spinstar::ScenarioConfig config = opts.config_path.empty()
                                          ? spinstar::load_preset(opts.preset)
                                          : spinstar::load_config(opts.config_path);
    if (opts.samples) config.samples = *opts.samples;
    if (opts.tolerance) config.tolerance = *opts.tolerance;
    config.validate();
    return config;
}

void print_system_summary(const spinstar::ScenarioConfig& config) {
    const spinstar::SpinStarSystem system = config.system.build();
    const spinstar::CollectiveParams params =
        spinstar::collective_params(system, config.tolerance);
    std::cout << "system: M=" << system.M << " gamma=" << system.gamma;
    if (config.system.explicit_matrix) {
        std::cout << " topology=explicit";
    } else {
        std::cout << " topology=" << spinstar::to_string(config.system.topology.kind);
    }
    if (config.dissipative) {
        std::cout << " Gamma=" << system.Gamma << " kappa=" << system.kappa;
    }
    std::cout << "\ndelta = " << params.delta
              << "\nomega = " << spinstar::collective_frequency(params.M, params.gamma,
                                                                params.delta)
              << "\n";
}

int run_simulate_cmd(const CommonOptions& opts) {
    const spinstar::ScenarioConfig config = load_scenario(opts);
    print_system_summary(config);
    const auto files = spinstar::run_simulate(config, opts.out_dir);
    for (const auto& file : files) {
        std::cout << "wrote " << file.string() << "\n";
    }
    return kExitOk;
}

int run_reduce_cmd(const CommonOptions& opts, int target_n) {
    const spinstar::ScenarioConfig config = load_scenario(opts);
    int n = target_n;
    if (n < 0) {
        if (!config.reduce_to) {
            throw spinstar::ValidationError(
                "reduction target required: pass -n or set reduce_to in the config");
        }
        n = *config.reduce_to;
    }
    print_system_summary(config);
    const spinstar::EquivalenceReport report = spinstar::run_equivalence(config, n);
    std::cout << "reduced to n=" << report.n << " with delta_n=" << report.delta_n
              << " (omega preserved: " << report.omega << ")\n"
              << "max residual P = " << report.max_residual_P
              << ", E = " << report.max_residual_E << " -> "
              << report.classification() << "\n";
    const auto files = spinstar::run_reduce(config, n, opts.out_dir);
    for (const auto& file : files) {
        std::cout << "wrote " << file.string() << "\n";
    }
    return kExitOk;
}

int run_verify_cmd(const std::string& suite, std::uint64_t seed,
                   const std::string& out_dir) {
    const auto results = spinstar::verify::run_suites(suite, seed);
    bool passed = true;
    for (const auto& result : results) {
        std::cout << spinstar::verify::summary_text(result);
        passed = passed && result.passed();
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const auto path = std::filesystem::path(out_dir) / "verify_report.json";
        std::ofstream out(path, std::ios::binary);
        out << spinstar::verify::suites_to_json(results);
        std::cout << "wrote " << path.string() << "\n";
    }
    std::cout << "verify: " << (passed ? "PASS" : "FAIL") << "\n";
    return passed ? kExitOk : kExitSuiteFailure;
}

int run_sweep_cmd(const CommonOptions& opts) {
    const spinstar::ScenarioConfig config = load_scenario(opts);
    const auto files = spinstar::run_sweep(config, opts.out_dir);
    for (const auto& file : files) {
        std::cout << "wrote " << file.string() << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinstar — spin-star network dynamics toolkit"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    auto* simulate = app.add_subcommand(
        "simulate", "Emit time-series tables for a scenario");
    add_scenario_options(simulate, sim_opts);

    CommonOptions reduce_opts;
    int target_n = -1;
    auto* reduce = app.add_subcommand(
        "reduce", "Map a system onto an equivalent n+1 system and report residuals");
    add_scenario_options(reduce, reduce_opts);
    reduce->add_option("-n,--target", target_n, "Number of outer qubits to keep");

    std::string suite = "all";
    std::uint64_t seed = 7;
    std::string verify_out;
    auto* verify = app.add_subcommand(
        "verify", "Run the verification suites (bounds, oracle, equivalence, "
                  "dissipative, all)");
    verify->add_option("--suite", suite, "Suite name")->capture_default_str();
    verify->add_option("--seed", seed, "Random seed")->capture_default_str();
    verify->add_option("--out", verify_out, "Directory for the JSON report");

    CommonOptions sweep_opts;
    auto* sweep = app.add_subcommand(
        "sweep", "Run a parameter sweep defined in the config");
    add_scenario_options(sweep, sweep_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (simulate->parsed()) return run_simulate_cmd(sim_opts);
        if (reduce->parsed()) return run_reduce_cmd(reduce_opts, target_n);
        if (verify->parsed()) return run_verify_cmd(suite, seed, verify_out);
        if (sweep->parsed()) return run_sweep_cmd(sweep_opts);
    } catch (const spinstar::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const spinstar::SymmetryError& e) {
        std::cerr << "symmetry violation: " << e.what() << "\n";
        return kExitValidation;
    } catch (const spinstar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
