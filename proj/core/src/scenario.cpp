#include "spinstar/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "spinstar/closedform.hpp"
#include "spinstar/entanglement.hpp"
#include "spinstar/oracle.hpp"

#ifndef SPINSTAR_SOURCE_PRESET_DIR
#define SPINSTAR_SOURCE_PRESET_DIR ""
#endif
#ifndef SPINSTAR_INSTALL_PRESET_DIR
#define SPINSTAR_INSTALL_PRESET_DIR ""
#endif

namespace spinstar {

using json = nlohmann::ordered_json;

// ------------------------------ configuration -------------------------------

SpinStarSystem SystemConfig::build() const {
    if (explicit_matrix) {
        return SpinStarSystem(M, gamma, matrix, Gamma, kappa);
    }
    return build_topology(topology, M, gamma, Gamma, kappa);
}

AmplitudeState InitialCondition::make(int M) const {
    switch (kind) {
        case InitialKind::center:
            return center_excitation(M);
        case InitialKind::uniform_bath:
            return uniform_bath(M, phase);
        case InitialKind::explicit_vector: {
            if (b.size() != M) {
                throw ValidationError("initial amplitude vector must have M entries");
            }
            AmplitudeState state(b, b_C);
            if (std::abs(state.norm_sq() - 1.0) > 1e-8) {
                throw ValidationError("initial amplitude vector must be normalized "
                                      "(|norm^2 - 1| <= 1e-8)");
            }
            return state;
        }
    }
    throw ValidationError("invalid initial condition kind");
}

void ScenarioConfig::validate() const {
    if (!(horizon > 0.0)) {
        throw ValidationError("config: horizon must be > 0");
    }
    if (samples < 2) {
        throw ValidationError("config: samples must be >= 2");
    }
    if (!(tolerance > 0.0)) {
        throw ValidationError("config: tolerance must be > 0");
    }
    for (const auto& output : outputs) {
        if (output != "series" && output != "concurrences" && output != "residuals") {
            throw ValidationError("config: unknown output '" + output + "'");
        }
    }
    if (reduce_to && (*reduce_to < 2 || *reduce_to > system.M)) {
        throw ValidationError("config: reduce_to must satisfy 2 <= n <= M");
    }
    initial.make(system.M); // validates sizes and normalization
    if (sweep) {
        static const std::vector<std::string> allowed = {
            "M", "gamma", "Gamma", "kappa", "J", "radius", "horizon"};
        bool ok = false;
        for (const auto& p : allowed) ok = ok || p == sweep->parameter;
        if (!ok) {
            throw ValidationError("config: unsupported sweep parameter '" +
                                  sweep->parameter + "'");
        }
        if (sweep->values.empty()) {
            throw ValidationError("config: sweep needs at least one value");
        }
    }
}

bool ScenarioConfig::wants(const std::string& output) const {
    for (const auto& o : outputs) {
        if (o == output) return true;
    }
    return false;
}

// ---------------------------------- JSON ------------------------------------

namespace {

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2) {
        throw ValidationError("config: " + what + " must be a [re, im] pair");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json config_to_json(const ScenarioConfig& config) {
    json j;
    j["name"] = config.name;
    json sys;
    sys["M"] = config.system.M;
    sys["gamma"] = config.system.gamma;
    sys["Gamma"] = config.system.Gamma;
    sys["kappa"] = config.system.kappa;
    json topo;
    if (config.system.explicit_matrix) {
        topo["kind"] = "explicit";
        json rows = json::array();
        for (Eigen::Index r = 0; r < config.system.matrix.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < config.system.matrix.cols(); ++c) {
                row.push_back(config.system.matrix(r, c));
            }
            rows.push_back(std::move(row));
        }
        topo["matrix"] = std::move(rows);
    } else {
        topo["kind"] = to_string(config.system.topology.kind);
        topo["J"] = config.system.topology.J;
        if (config.system.topology.kind == Topology::dipole_ring) {
            topo["radius"] = config.system.topology.radius;
        }
    }
    sys["topology"] = std::move(topo);
    j["system"] = std::move(sys);

    json init;
    switch (config.initial.kind) {
        case InitialKind::center:
            init["kind"] = "center";
            break;
        case InitialKind::uniform_bath:
            init["kind"] = "uniform_bath";
            init["phase"] = config.initial.phase;
            break;
        case InitialKind::explicit_vector: {
            init["kind"] = "explicit";
            json amps = json::array();
            for (Eigen::Index i = 0; i < config.initial.b.size(); ++i) {
                amps.push_back(complex_to_json(config.initial.b(i)));
            }
            init["b"] = std::move(amps);
            init["b_C"] = complex_to_json(config.initial.b_C);
            break;
        }
    }
    j["initial"] = std::move(init);
    j["horizon"] = config.horizon;
    j["samples"] = config.samples;
    j["mode"] = config.dissipative ? "dissipative" : "unitary";
    j["outputs"] = config.outputs;
    if (config.reduce_to) {
        j["reduce_to"] = *config.reduce_to;
    }
    j["tolerance"] = config.tolerance;
    if (config.sweep) {
        json sweep;
        sweep["parameter"] = config.sweep->parameter;
        sweep["values"] = config.sweep->values;
        j["sweep"] = std::move(sweep);
    }
    return j;
}

const json& require(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) {
        throw ValidationError("config: missing field '" + key + "' in " + where);
    }
    return j.at(key);
}

ScenarioConfig config_from_json(const json& j) {
    ScenarioConfig config;
    try {
        if (j.contains("name")) config.name = j.at("name").get<std::string>();

        const json& sys = require(j, "system", "config");
        config.system.M = require(sys, "M", "system").get<int>();
        config.system.gamma = require(sys, "gamma", "system").get<double>();
        if (sys.contains("Gamma")) config.system.Gamma = sys.at("Gamma").get<double>();
        if (sys.contains("kappa")) config.system.kappa = sys.at("kappa").get<double>();

        const json& topo = require(sys, "topology", "system");
        const std::string kind = require(topo, "kind", "topology").get<std::string>();
        if (kind == "explicit") {
            config.system.explicit_matrix = true;
            const json& rows = require(topo, "matrix", "topology");
            const int M = config.system.M;
            if (!rows.is_array() || static_cast<int>(rows.size()) != M) {
                throw ValidationError("config: topology.matrix must have M rows");
            }
            config.system.matrix.resize(M, M);
            for (int r = 0; r < M; ++r) {
                const json& row = rows.at(r);
                if (!row.is_array() || static_cast<int>(row.size()) != M) {
                    throw ValidationError("config: topology.matrix row " +
                                          std::to_string(r + 1) + " must have M entries");
                }
                for (int c = 0; c < M; ++c) {
                    config.system.matrix(r, c) = row.at(c).get<double>();
                }
            }
        } else {
            config.system.topology.kind = topology_from_string(kind);
            config.system.topology.J = require(topo, "J", "topology").get<double>();
            if (topo.contains("radius")) {
                config.system.topology.radius = topo.at("radius").get<double>();
            }
        }

        const json& init = require(j, "initial", "config");
        const std::string init_kind = require(init, "kind", "initial").get<std::string>();
        if (init_kind == "center") {
            config.initial.kind = InitialKind::center;
        } else if (init_kind == "uniform_bath") {
            config.initial.kind = InitialKind::uniform_bath;
            if (init.contains("phase")) {
                config.initial.phase = init.at("phase").get<double>();
            }
        } else if (init_kind == "explicit") {
            config.initial.kind = InitialKind::explicit_vector;
            const json& amps = require(init, "b", "initial");
            config.initial.b.resize(amps.size());
            for (std::size_t i = 0; i < amps.size(); ++i) {
                config.initial.b(static_cast<Eigen::Index>(i)) =
                    complex_from_json(amps.at(i), "initial.b[" + std::to_string(i) + "]");
            }
            config.initial.b_C = complex_from_json(require(init, "b_C", "initial"),
                                                   "initial.b_C");
        } else {
            throw ValidationError("config: unknown initial kind '" + init_kind + "'");
        }

        config.horizon = require(j, "horizon", "config").get<double>();
        if (j.contains("samples")) config.samples = j.at("samples").get<int>();
        if (j.contains("mode")) {
            const std::string mode = j.at("mode").get<std::string>();
            if (mode == "unitary") {
                config.dissipative = false;
            } else if (mode == "dissipative") {
                config.dissipative = true;
            } else {
                throw ValidationError("config: mode must be 'unitary' or 'dissipative'");
            }
        }
        if (j.contains("outputs")) {
            config.outputs = j.at("outputs").get<std::vector<std::string>>();
        }
        if (j.contains("reduce_to")) config.reduce_to = j.at("reduce_to").get<int>();
        if (j.contains("tolerance")) config.tolerance = j.at("tolerance").get<double>();
        if (j.contains("sweep")) {
            SweepSpec sweep;
            const json& sw = j.at("sweep");
            sweep.parameter = require(sw, "parameter", "sweep").get<std::string>();
            sweep.values = require(sw, "values", "sweep").get<std::vector<double>>();
            config.sweep = std::move(sweep);
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    config.validate();
    return config;
}

std::string compact_config_echo(const ScenarioConfig& config) {
    return config_to_json(config).dump();
}

} // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

std::string config_to_json_text(const ScenarioConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open config: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str());
}

std::filesystem::path find_preset(const std::string& name) {
    namespace fs = std::filesystem;
    if (fs::exists(name)) {
        return name;
    }
    std::string file = name;
    if (file.size() < 5 || file.substr(file.size() - 5) != ".json") {
        file += ".json";
    }
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("SPINSTAR_PRESET_DIR")) {
        dirs.emplace_back(env);
    }
    if (*SPINSTAR_INSTALL_PRESET_DIR) {
        dirs.emplace_back(SPINSTAR_INSTALL_PRESET_DIR);
    }
    if (*SPINSTAR_SOURCE_PRESET_DIR) {
        dirs.emplace_back(SPINSTAR_SOURCE_PRESET_DIR);
    }
    dirs.emplace_back("presets");
    for (const auto& dir : dirs) {
        const fs::path candidate = dir / file;
        if (fs::exists(candidate)) {
            return candidate;
        }
    }
    throw ValidationError("preset not found: " + name);
}

ScenarioConfig load_preset(const std::string& name) {
    return load_config(find_preset(name));
}

// --------------------------------- engines ----------------------------------

namespace {

struct SeriesPoint {
    double t{0.0};
    Complex b_C{0.0, 0.0}; // raw (conditional) amplitudes
    Complex B{0.0, 0.0};
    double norm{1.0};
    AmplitudeState normalized; // for entanglement columns
};

// below this the conditional state has decayed past any usable precision
// and its entanglement columns are reported as NaN
constexpr double kMinLiveNorm = 1e-150;

// Closed-form engine over the collective pair; bath amplitudes are uniform
// B/M. Works for any (B0, bC0) pair, normalizing snapshots by the
// uniform-sector norm.
std::vector<SeriesPoint> closed_form_series(const CollectiveParams& params,
                                            Complex B0, Complex bC0,
                                            const std::vector<double>& times,
                                            bool dissipative) {
    std::vector<SeriesPoint> points;
    points.reserve(times.size());
    for (double t : times) {
        const CollectiveState s = evolve_collective(params, B0, bC0, t, dissipative);
        SeriesPoint p;
        p.t = t;
        p.b_C = s.b_C;
        p.B = s.B;
        const double nsq = uniform_sector_norm_sq(s, params.M);
        p.norm = std::sqrt(nsq);
        const double scale = p.norm > kMinLiveNorm ? 1.0 / p.norm : 0.0;
        const Complex bj = s.B / double(params.M) * scale;
        p.normalized = AmplitudeState(Eigen::VectorXcd::Constant(params.M, bj),
                                      s.b_C * scale);
        points.push_back(std::move(p));
    }
    return points;
}

// Exact sector engine for explicit (possibly non-uniform) amplitude vectors.
std::vector<SeriesPoint> sector_series(const SpinStarSystem& system,
                                       const AmplitudeState& initial,
                                       const std::vector<double>& times,
                                       bool dissipative) {
    const SubspaceHamiltonian H = build_subspace_hamiltonian(system, 1, dissipative);
    const EvolutionResult result =
        evolve_exact(H, embed_single_excitation(initial), times);
    std::vector<SeriesPoint> points;
    points.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const AmplitudeState amp = result.amplitude_state(i);
        SeriesPoint p;
        p.t = times[i];
        p.b_C = amp.b_center;
        p.B = amp.bath_sum();
        p.norm = result.norms[i];
        p.normalized = p.norm > kMinLiveNorm
                           ? amp.normalized()
                           : AmplitudeState(Eigen::VectorXcd::Zero(amp.M()), 0.0);
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<SeriesPoint> run_engine(const ScenarioConfig& config,
                                    const CollectiveParams& params,
                                    const std::vector<double>& times) {
    if (config.initial.uniform_sector()) {
        const AmplitudeState init = config.initial.make(config.system.M);
        return closed_form_series(params, init.bath_sum(), init.b_center, times,
                                  config.dissipative);
    }
    return sector_series(config.system.build(), config.initial.make(config.system.M),
                         times, config.dissipative);
}

std::vector<std::string> series_comments(const ScenarioConfig& config,
                                         const CollectiveParams& params,
                                         const std::string& engine) {
    std::vector<std::string> comments;
    comments.push_back("spinstar simulate");
    comments.push_back("config: " + compact_config_echo(config));
    comments.push_back("engine: " + engine);
    comments.push_back("delta: " + format_value(params.delta));
    comments.push_back("omega: " +
                       format_value(collective_frequency(params.M, params.gamma,
                                                         params.delta)));
    if (config.dissipative) {
        const DissipativeParams d = dissipative_params(params);
        comments.push_back("X: " + format_value(d.X.real()) + " " +
                           format_value(d.X.imag()));
        comments.push_back("omega_c: " + format_value(d.Omega_c.real()) + " " +
                           format_value(d.Omega_c.imag()));
    }
    comments.push_back("time unit: inverse coupling (1/gamma when gamma = 1)");
    return comments;
}

Table build_series_table(const ScenarioConfig& config,
                         const CollectiveParams& params,
                         const std::vector<SeriesPoint>& points,
                         const std::string& engine) {
    Table table;
    table.comments = series_comments(config, params, engine);
    table.columns = {"t",          "re_b_C",      "im_b_C", "P",    "B_sq",
                     "script_E_B", "script_E_BC", "E_B",    "E_BC", "norm",
                     "P_over_M"};
    for (const auto& p : points) {
        const double P = std::norm(p.b_C);
        if (p.norm > kMinLiveNorm) {
            const EntanglementSnapshot snap = entanglement_snapshot(p.normalized, p.t);
            table.append_row({p.t, p.b_C.real(), p.b_C.imag(), P, std::norm(p.B),
                              snap.script_E_B, snap.script_E_BC, snap.E_B,
                              snap.E_BC, p.norm, P / double(params.M)});
        } else {
            // conditional norm underflowed: the no-jump state is gone and
            // its entanglement is undefined
            const double nan = std::numeric_limits<double>::quiet_NaN();
            table.append_row({p.t, p.b_C.real(), p.b_C.imag(), P, std::norm(p.B),
                              nan, nan, nan, nan, p.norm, P / double(params.M)});
        }
    }
    return table;
}

} // namespace

Table simulate_series_table(const ScenarioConfig& config) {
    config.validate();
    const SpinStarSystem system = config.system.build();
    const CollectiveParams params = collective_params(system, config.tolerance);
    const auto times = linspace(0.0, config.horizon, config.samples);
    const std::string engine =
        config.initial.uniform_sector() ? "closedform" : "sector-exact";
    return build_series_table(config, params, run_engine(config, params, times),
                              engine);
}

Table concurrence_table(const ScenarioConfig& config) {
    config.validate();
    const SpinStarSystem system = config.system.build();
    const CollectiveParams params = collective_params(system, config.tolerance);
    const auto times = linspace(0.0, config.horizon, config.samples);
    const auto points = run_engine(config, params, times);

    Table table;
    table.comments = {"spinstar concurrences",
                      "config: " + compact_config_echo(config)};
    table.columns.push_back("t");
    const int M = config.system.M;
    for (int j = 1; j <= M; ++j) {
        for (int k = j + 1; k <= M; ++k) {
            table.columns.push_back("C_" + std::to_string(j) + "_" + std::to_string(k));
        }
    }
    for (int j = 1; j <= M; ++j) {
        table.columns.push_back("C_" + std::to_string(j) + "_C");
    }
    for (const auto& p : points) {
        std::vector<double> row;
        row.reserve(table.columns.size());
        row.push_back(p.t);
        if (p.norm > kMinLiveNorm) {
            const EntanglementSnapshot snap = entanglement_snapshot(p.normalized, p.t);
            for (int j = 0; j < M; ++j) {
                for (int k = j + 1; k < M; ++k) {
                    row.push_back(snap.concurrences_bath(j, k));
                }
            }
            for (int j = 0; j < M; ++j) {
                row.push_back(snap.concurrences_center(j));
            }
        } else {
            row.resize(table.columns.size(),
                       std::numeric_limits<double>::quiet_NaN());
            row[0] = p.t;
        }
        table.append_row(std::move(row));
    }
    return table;
}

Table equivalence_residual_table(const EquivalenceReport& report) {
    Table table;
    table.comments = {
        "spinstar reduce",
        "M: " + std::to_string(report.M) + " n: " + std::to_string(report.n),
        "gamma: " + format_value(report.gamma),
        "delta_M: " + format_value(report.delta_M),
        "delta_n: " + format_value(report.delta_n),
        "omega: " + format_value(report.omega),
        "classification: " + report.classification(),
    };
    table.columns = {"t",   "P_M",      "E_M",      "P_n",        "E_n",
                     "P_n_pred", "E_n_pred", "residual_P", "residual_E"};
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        table.append_row({report.times[i], report.P_M[i], report.E_M[i],
                          report.P_n[i], report.E_n[i], report.P_n_pred[i],
                          report.E_n_pred[i], report.residual_P[i],
                          report.residual_E[i]});
    }
    return table;
}

std::string equivalence_report_json(const EquivalenceReport& report) {
    json j;
    j["M"] = report.M;
    j["n"] = report.n;
    j["gamma"] = report.gamma;
    j["delta_M"] = report.delta_M;
    j["delta_n"] = report.delta_n;
    j["omega"] = report.omega;
    j["mode"] = report.dissipative ? "dissipative" : "unitary";
    j["b_C0"] = complex_to_json(report.bC0);
    j["B0_M"] = complex_to_json(report.B0_M);
    j["B0_n"] = complex_to_json(report.B0_n);
    j["alpha_M"] = report.coeffs_M.alpha;
    j["beta_M"] = report.coeffs_M.beta;
    j["alpha_n"] = report.coeffs_n.alpha;
    j["beta_n"] = report.coeffs_n.beta;
    j["samples"] = report.times.size();
    j["horizon"] = report.times.empty() ? 0.0 : report.times.back();
    j["max_residual_P"] = report.max_residual_P;
    j["max_residual_E"] = report.max_residual_E;
    j["exact_threshold"] = report.exact_threshold;
    j["exact_P"] = report.exact_P();
    j["exact_E"] = report.exact_E();
    j["classification"] = report.classification();
    j["times"] = report.times;
    j["residual_P"] = report.residual_P;
    j["residual_E"] = report.residual_E;
    return j.dump(2) + "\n";
}

EquivalenceReport run_equivalence(const ScenarioConfig& config, int n) {
    const SpinStarSystem system = config.system.build();
    const AmplitudeState init = config.initial.make(config.system.M);
    return verify_equivalence(system, n, init.bath_sum(), init.b_center,
                              config.horizon, config.samples, config.dissipative,
                              config.tolerance);
}

// --------------------------------- writers ----------------------------------

namespace {

void write_text_file(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path.string());
    }
    out << text;
    if (!out) {
        throw ValidationError("write failed: " + path.string());
    }
}

// Copy of the scenario describing the reduced system with the policy initial
// condition, used to emit the equivalent-system series table.
ScenarioConfig equivalent_scenario(const ScenarioConfig& config,
                                   const EquivalenceReport& report) {
    ScenarioConfig eq = config;
    eq.name = config.name + "_equivalent";
    eq.system.M = report.n;
    eq.system.explicit_matrix = false;
    eq.system.topology.kind = Topology::uniform_pairwise;
    eq.system.topology.J = report.delta_n / double(report.n - 1);
    eq.reduce_to.reset();
    eq.sweep.reset();
    eq.initial.kind = InitialKind::explicit_vector;
    eq.initial.b = Eigen::VectorXcd::Constant(report.n, report.B0_n / double(report.n));
    eq.initial.b_C = report.bC0;
    return eq;
}

} // namespace

std::vector<std::filesystem::path> run_simulate(const ScenarioConfig& config,
                                                const std::filesystem::path& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> files;

    const Table series = simulate_series_table(config);
    const auto series_path = out_dir / (config.name + "_series.tsv");
    write_table_file(series, series_path);
    files.push_back(series_path);

    if (config.wants("concurrences")) {
        const auto path = out_dir / (config.name + "_concurrences.tsv");
        write_table_file(concurrence_table(config), path);
        files.push_back(path);
    }

    if (config.reduce_to) {
        const EquivalenceReport report = run_equivalence(config, *config.reduce_to);

        // Equivalent-system series. For B0_n = 0 and |b_C(0)| < 1 the policy
        // state is sub-normalized; the collective engine handles it directly.
        const ScenarioConfig eq = equivalent_scenario(config, report);
        const SpinStarSystem eq_system = eq.system.build();
        const CollectiveParams eq_params = collective_params(eq_system, eq.tolerance);
        const auto times = linspace(0.0, eq.horizon, eq.samples);
        const auto points = closed_form_series(eq_params, report.B0_n, report.bC0,
                                               times, eq.dissipative);
        const auto eq_path = out_dir / (config.name + "_equivalent_series.tsv");
        write_table_file(build_series_table(eq, eq_params, points, "closedform"),
                         eq_path);
        files.push_back(eq_path);

        const auto residual_path = out_dir / (config.name + "_residuals.tsv");
        write_table_file(equivalence_residual_table(report), residual_path);
        files.push_back(residual_path);

        const auto report_path = out_dir / (config.name + "_report.json");
        write_text_file(equivalence_report_json(report), report_path);
        files.push_back(report_path);
    }
    return files;
}

std::vector<std::filesystem::path> run_reduce(const ScenarioConfig& config, int n,
                                              const std::filesystem::path& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);
    const EquivalenceReport report = run_equivalence(config, n);

    std::vector<std::filesystem::path> files;
    const auto residual_path = out_dir / (config.name + "_reduction_residuals.tsv");
    write_table_file(equivalence_residual_table(report), residual_path);
    files.push_back(residual_path);

    const auto report_path = out_dir / (config.name + "_reduction_report.json");
    write_text_file(equivalence_report_json(report), report_path);
    files.push_back(report_path);
    return files;
}

std::vector<std::filesystem::path> run_sweep(const ScenarioConfig& config,
                                             const std::filesystem::path& out_dir) {
    config.validate();
    if (!config.sweep) {
        throw ValidationError("config: sweep section required for the sweep command");
    }
    std::filesystem::create_directories(out_dir);
    const SweepSpec sweep = *config.sweep;

    json manifest;
    manifest["name"] = config.name;
    manifest["parameter"] = sweep.parameter;
    manifest["values"] = sweep.values;
    json runs = json::array();

    // validate and specialize every run first, then fan out over workers;
    // each run writes only its own files
    std::vector<ScenarioConfig> run_configs;
    run_configs.reserve(sweep.values.size());
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
        const double value = sweep.values[i];
        ScenarioConfig run = config;
        run.sweep.reset();
        run.name = config.name + "_" + sweep.parameter + "_" + std::to_string(i);

        if (sweep.parameter == "M") {
            const int M = static_cast<int>(std::llround(value));
            if (std::abs(value - double(M)) > 1e-9 || M < 1) {
                throw ValidationError("sweep: M values must be positive integers");
            }
            run.system.M = M;
            if (run.initial.kind == InitialKind::explicit_vector) {
                throw ValidationError("sweep over M is incompatible with an "
                                      "explicit initial vector");
            }
        } else if (sweep.parameter == "gamma") {
            run.system.gamma = value;
        } else if (sweep.parameter == "Gamma") {
            run.system.Gamma = value;
        } else if (sweep.parameter == "kappa") {
            run.system.kappa = value;
        } else if (sweep.parameter == "J") {
            if (run.system.explicit_matrix) {
                throw ValidationError("sweep over J requires a standard topology");
            }
            run.system.topology.J = value;
        } else if (sweep.parameter == "radius") {
            if (run.system.explicit_matrix ||
                run.system.topology.kind != Topology::dipole_ring) {
                throw ValidationError("sweep over radius requires dipole_ring");
            }
            run.system.topology.radius = value;
        } else if (sweep.parameter == "horizon") {
            run.horizon = value;
        }
        run.validate();
        run_configs.push_back(std::move(run));
    }

    std::vector<std::future<std::vector<std::filesystem::path>>> futures;
    futures.reserve(run_configs.size());
    for (const auto& run : run_configs) {
        futures.push_back(std::async(
            std::launch::async,
            [&out_dir](const ScenarioConfig& cfg) { return run_simulate(cfg, out_dir); },
            run));
    }

    std::vector<std::filesystem::path> files;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        const auto run_files = futures[i].get();
        json entry;
        entry["value"] = sweep.values[i];
        json names = json::array();
        for (const auto& f : run_files) {
            names.push_back(f.filename().string());
            files.push_back(f);
        }
        entry["files"] = std::move(names);
        runs.push_back(std::move(entry));
    }
    manifest["runs"] = std::move(runs);

    const auto manifest_path = out_dir / (config.name + "_sweep_manifest.json");
    write_text_file(manifest.dump(2) + "\n", manifest_path);
    files.push_back(manifest_path);
    return files;
}

} // namespace spinstar
