#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spinstar/model.hpp"
#include "spinstar/renorm.hpp"
#include "spinstar/table.hpp"

namespace spinstar {

// ------------------------------ configuration -------------------------------
// JSON schema (see README for the full reference):
//
//   {
//     "name": "fig2",
//     "system": {
//       "M": 10, "gamma": 1.0, "Gamma": 0.0, "kappa": 0.0,
//       "topology": {"kind": "nearest_neighbor", "J": 1.0}
//         | {"kind": "dipole_ring", "J": 1.0, "radius": 0.5}
//         | {"kind": "explicit", "matrix": [[...], ...]}
//     },
//     "initial": {"kind": "center"}
//         | {"kind": "uniform_bath", "phase": 0.0}
//         | {"kind": "explicit", "b": [[re, im], ...], "b_C": [re, im]},
//     "horizon": 20.0,
//     "samples": 2001,
//     "mode": "unitary" | "dissipative",
//     "outputs": ["series", "concurrences", "residuals"],
//     "reduce_to": 2,                  // optional
//     "tolerance": 1e-9,               // optional, symmetry tolerance
//     "sweep": {"parameter": "gamma", "values": [0.5, 1.0]}   // optional
//   }

struct SystemConfig {
    int M{2};
    double gamma{1.0};
    double Gamma{0.0};
    double kappa{0.0};
    bool explicit_matrix{false};
    TopologySpec topology;  // used when !explicit_matrix
    Eigen::MatrixXd matrix; // used when explicit_matrix

    SpinStarSystem build() const;
};

enum class InitialKind { center, uniform_bath, explicit_vector };

struct InitialCondition {
    InitialKind kind{InitialKind::center};
    double phase{0.0};   // uniform_bath only
    Eigen::VectorXcd b;  // explicit_vector only
    Complex b_C{0.0, 0.0};

    // Materializes the amplitudes; explicit vectors must be normalized to
    // 1e-8 and sized to M.
    AmplitudeState make(int M) const;
    bool uniform_sector() const { return kind != InitialKind::explicit_vector; }
};

struct SweepSpec {
    std::string parameter; // M | gamma | Gamma | kappa | J | radius | horizon
    std::vector<double> values;
};

struct ScenarioConfig {
    std::string name{"scenario"};
    SystemConfig system;
    InitialCondition initial;
    double horizon{20.0};
    int samples{2001};
    bool dissipative{false};
    std::vector<std::string> outputs{"series"};
    std::optional<int> reduce_to;
    std::optional<SweepSpec> sweep;
    double tolerance{kDefaultSymmetryTolerance};

    void validate() const;
    bool wants(const std::string& output) const;
};

ScenarioConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ScenarioConfig& config);
ScenarioConfig load_config(const std::filesystem::path& path);

// Preset lookup: an existing path wins; otherwise "<name>.json" is searched
// in $SPINSTAR_PRESET_DIR, the installed data directory, and the source-tree
// presets directory.
std::filesystem::path find_preset(const std::string& name);
ScenarioConfig load_preset(const std::string& name);

// -------------------------------- runners -----------------------------------

// The main time-series table: columns t, re_b_C, im_b_C, P (=|b_C|^2), B_sq
// (=|B|^2), script_E_B, script_E_BC, E_B, E_BC, norm, P_over_M. Amplitude
// columns are raw (conditional) values; entanglement columns are computed on
// the normalized state. Uniform-sector initial conditions run on the
// closed-form propagators; explicit vectors run on the exact sector engine.
Table simulate_series_table(const ScenarioConfig& config);

// Pairwise concurrence table: t then C_j_k for j < k then C_j_C (1-based).
Table concurrence_table(const ScenarioConfig& config);

// Residual table of an equivalence report: t, P_M, E_M, P_n, E_n, P_n_pred,
// E_n_pred, residual_P, residual_E.
Table equivalence_residual_table(const EquivalenceReport& report);

// Structured JSON report: mapped parameters, transform coefficients,
// residual maxima and classification.
std::string equivalence_report_json(const EquivalenceReport& report);

// Equivalence run driven by a scenario config (initial condition folded to
// its collective pair).
EquivalenceReport run_equivalence(const ScenarioConfig& config, int n);

// Writers; return the list of files written (deterministic content).
std::vector<std::filesystem::path> run_simulate(const ScenarioConfig& config,
                                                const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> run_reduce(const ScenarioConfig& config, int n,
                                              const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> run_sweep(const ScenarioConfig& config,
                                             const std::filesystem::path& out_dir);

} // namespace spinstar
