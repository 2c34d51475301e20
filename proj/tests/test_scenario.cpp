#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

#include "spinstar/scenario.hpp"

using namespace spinstar;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "spinstar_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ScenarioConfig small_config() {
    ScenarioConfig config;
    config.name = "unit";
    config.system.M = 4;
    config.system.gamma = 1.0;
    config.system.topology = {Topology::uniform_pairwise, 0.8, 0.5};
    config.initial.kind = InitialKind::center;
    config.horizon = 5.0;
    config.samples = 41;
    return config;
}

} // namespace

TEST_CASE("config JSON round trip") {
    ScenarioConfig config = small_config();
    config.outputs = {"series", "concurrences"};
    config.reduce_to = 2;
    config.dissipative = true;
    config.system.Gamma = 0.1;
    config.system.kappa = 0.2;
    SweepSpec sweep;
    sweep.parameter = "gamma";
    sweep.values = {0.5, 1.5};
    config.sweep = sweep;

    const ScenarioConfig parsed = config_from_json_text(config_to_json_text(config));
    CHECK(parsed.name == config.name);
    CHECK(parsed.system.M == 4);
    CHECK(parsed.system.Gamma == 0.1);
    CHECK(parsed.system.topology.kind == Topology::uniform_pairwise);
    CHECK(parsed.system.topology.J == 0.8);
    CHECK(parsed.initial.kind == InitialKind::center);
    CHECK(parsed.horizon == 5.0);
    CHECK(parsed.samples == 41);
    CHECK(parsed.dissipative);
    CHECK(parsed.outputs.size() == 2);
    CHECK(parsed.reduce_to == 2);
    CHECK(parsed.sweep->parameter == "gamma");
    CHECK(parsed.sweep->values == std::vector<double>{0.5, 1.5});
}

TEST_CASE("explicit matrices and amplitude vectors round trip") {
    ScenarioConfig config = small_config();
    config.system.M = 2;
    config.system.explicit_matrix = true;
    config.system.matrix = Eigen::MatrixXd::Zero(2, 2);
    config.system.matrix(0, 1) = config.system.matrix(1, 0) = 1.5;
    config.initial.kind = InitialKind::explicit_vector;
    config.initial.b = Eigen::VectorXcd(2);
    config.initial.b << Complex(0.6, 0.0), Complex(0.0, 0.6);
    config.initial.b_C = Complex(std::sqrt(1.0 - 0.72), 0.0);

    const ScenarioConfig parsed = config_from_json_text(config_to_json_text(config));
    CHECK(parsed.system.explicit_matrix);
    CHECK(parsed.system.matrix(0, 1) == 1.5);
    CHECK(parsed.initial.kind == InitialKind::explicit_vector);
    CHECK(std::abs(parsed.initial.b(1) - Complex(0.0, 0.6)) == 0.0);
}

TEST_CASE("config validation rejects bad fields") {
    ScenarioConfig config = small_config();
    config.horizon = 0.0;
    CHECK_THROWS_AS(config.validate(), ValidationError);

    config = small_config();
    config.samples = 1;
    CHECK_THROWS_AS(config.validate(), ValidationError);

    config = small_config();
    config.outputs = {"plots"};
    CHECK_THROWS_AS(config.validate(), ValidationError);

    config = small_config();
    config.reduce_to = 1;
    CHECK_THROWS_AS(config.validate(), ValidationError);

    config = small_config();
    config.initial.kind = InitialKind::explicit_vector;
    config.initial.b = Eigen::VectorXcd::Constant(4, Complex(0.5, 0.0));
    config.initial.b_C = Complex(0.5, 0.0); // norm^2 = 1.25
    CHECK_THROWS_AS(config.validate(), ValidationError);

    CHECK_THROWS_AS(config_from_json_text("{"), ValidationError);
    CHECK_THROWS_AS(config_from_json_text("{\"system\": {}}"), ValidationError);
    CHECK_THROWS_AS(
        config_from_json_text(R"({"system": {"M": 2, "gamma": 1,
            "topology": {"kind": "moebius", "J": 1}},
            "initial": {"kind": "center"}, "horizon": 1.0})"),
        ValidationError);
}

TEST_CASE("presets resolve from the source tree") {
    const ScenarioConfig fig2 = load_preset("fig2");
    CHECK(fig2.system.M == 10);
    CHECK(fig2.system.topology.kind == Topology::nearest_neighbor);
    CHECK(fig2.system.topology.J == 1.0);
    CHECK(fig2.initial.kind == InitialKind::center);
    CHECK(fig2.samples == 2001);
    CHECK(fig2.reduce_to == 2);

    const ScenarioConfig lh1 = load_preset("lh1");
    CHECK(lh1.system.M == 32);
    CHECK(lh1.system.topology.kind == Topology::dipole_ring);
    CHECK(lh1.system.topology.radius == 0.5);

    CHECK_THROWS_AS(load_preset("no_such_preset"), ValidationError);
}

TEST_CASE("lh1 delta matches the chord-sum formula") {
    ScenarioConfig config = load_preset("lh1");
    config.samples = 11;
    config.reduce_to.reset();
    const Table table = simulate_series_table(config);

    double emitted = 0.0;
    bool found = false;
    for (const auto& comment : table.comments) {
        if (comment.rfind("delta: ", 0) == 0) {
            emitted = std::strtod(comment.c_str() + 7, nullptr);
            found = true;
        }
    }
    REQUIRE(found);

    // Delta = J sum_{k=2}^{M} (1 / r_1k)^3 with r_1k = 2 R sin(pi (k-1) / M)
    double expected = 0.0;
    for (int k = 2; k <= 32; ++k) {
        const double r = 2.0 * 0.5 * std::sin(std::numbers::pi * (k - 1) / 32.0);
        expected += 1.0 / (r * r * r);
    }
    CHECK(emitted == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("lh1 reduces to two donors exactly for the center start") {
    ScenarioConfig config = load_preset("lh1");
    config.samples = 501;
    const EquivalenceReport report = run_equivalence(config, 2);
    CHECK(report.max_residual_P <= 1e-9);
    CHECK(report.max_residual_E <= 1e-9);
    CHECK(report.classification() == "exact");
}

TEST_CASE("series table layout and engine selection") {
    ScenarioConfig config = small_config();
    const Table table = simulate_series_table(config);
    CHECK(table.columns ==
          std::vector<std::string>{"t", "re_b_C", "im_b_C", "P", "B_sq",
                                   "script_E_B", "script_E_BC", "E_B", "E_BC",
                                   "norm", "P_over_M"});
    REQUIRE(table.n_rows() == 41);
    CHECK(table.rows.front()[3] == doctest::Approx(1.0)); // P(0) = 1
    CHECK(table.rows.front()[5] == doctest::Approx(0.0)); // script_E_B(0)
    for (const auto& row : table.rows) {
        CHECK(row[9] == doctest::Approx(1.0).epsilon(1e-10)); // unitary norm
        CHECK(row[10] == doctest::Approx(row[3] / 4.0).epsilon(1e-12));
    }
    bool engine_found = false;
    for (const auto& comment : table.comments) {
        engine_found = engine_found || comment == "engine: closedform";
    }
    CHECK(engine_found);

    // explicit vectors go through the exact sector engine
    config.initial.kind = InitialKind::explicit_vector;
    config.initial.b = Eigen::VectorXcd::Zero(4);
    config.initial.b(0) = Complex(0.8, 0.0);
    config.initial.b(1) = Complex(0.0, 0.6);
    config.initial.b_C = Complex(0.0, 0.0);
    const Table exact = simulate_series_table(config);
    bool exact_engine = false;
    for (const auto& comment : exact.comments) {
        exact_engine = exact_engine || comment == "engine: sector-exact";
    }
    CHECK(exact_engine);
}

TEST_CASE("closed-form and sector engines agree on uniform starts") {
    ScenarioConfig uniform = small_config();
    uniform.initial.kind = InitialKind::uniform_bath;
    const Table closed = simulate_series_table(uniform);

    ScenarioConfig explicit_cfg = small_config();
    explicit_cfg.initial.kind = InitialKind::explicit_vector;
    explicit_cfg.initial.b =
        Eigen::VectorXcd::Constant(4, Complex(0.5, 0.0)); // 1/sqrt(M)
    explicit_cfg.initial.b_C = Complex(0.0, 0.0);
    const Table sector = simulate_series_table(explicit_cfg);

    REQUIRE(closed.n_rows() == sector.n_rows());
    for (std::size_t r = 0; r < closed.n_rows(); ++r) {
        for (std::size_t c = 0; c < closed.n_cols(); ++c) {
            CHECK(closed.rows[r][c] ==
                  doctest::Approx(sector.rows[r][c]).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("asymmetric systems are refused with a symmetry report") {
    ScenarioConfig config = small_config();
    config.system.M = 3;
    config.system.explicit_matrix = true;
    config.system.matrix = Eigen::MatrixXd::Zero(3, 3);
    config.system.matrix(0, 1) = config.system.matrix(1, 0) = 1.0;
    CHECK_THROWS_AS(simulate_series_table(config), SymmetryError);
}

TEST_CASE("table parse(format(x)) is the identity") {
    Table table;
    table.comments = {"alpha", "beta: 1.5"};
    table.columns = {"t", "x", "y"};
    table.append_row({0.0, 1.0 / 3.0, -2.5e-17});
    table.append_row({1e300, -1e-300, 6.02214076e23});
    table.append_row({0.1, 0.2, 0.30000000000000004});

    const Table parsed = parse_table(format_table(table));
    CHECK(parsed.comments == table.comments);
    CHECK(parsed.columns == table.columns);
    REQUIRE(parsed.n_rows() == table.n_rows());
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        for (std::size_t c = 0; c < table.n_cols(); ++c) {
            CHECK(parsed.rows[r][c] == table.rows[r][c]); // bit-exact
        }
    }

    CHECK_THROWS_AS(parse_table(""), ValidationError);
    CHECK_THROWS_AS(parse_table("a\tb\n1.0\n"), ValidationError);
    CHECK_THROWS_AS(parse_table("a\tb\n1.0\tnope\n"), ValidationError);
}

TEST_CASE("simulate output is deterministic byte for byte") {
    const fs::path dir_a = make_temp_dir("determinism_a");
    const fs::path dir_b = make_temp_dir("determinism_b");
    ScenarioConfig config = small_config();
    config.reduce_to = 2;
    config.outputs = {"series", "concurrences", "residuals"};
    const auto files_a = run_simulate(config, dir_a);
    const auto files_b = run_simulate(config, dir_b);
    REQUIRE(files_a.size() == files_b.size());
    REQUIRE(files_a.size() == 5);
    for (std::size_t i = 0; i < files_a.size(); ++i) {
        CHECK(read_file(files_a[i]) == read_file(files_b[i]));
    }
}

TEST_CASE("reduce writes a residual table and a JSON report") {
    const fs::path dir = make_temp_dir("reduce");
    ScenarioConfig config = small_config();
    config.samples = 101;
    const auto files = run_reduce(config, 2, dir);
    REQUIRE(files.size() == 2);

    const Table residuals = read_table_file(files[0]);
    CHECK(residuals.column_index("P_n_pred") >= 0);
    CHECK(residuals.column_index("residual_P") >= 0);
    const int rp = residuals.column_index("residual_P");
    for (const auto& row : residuals.rows) {
        CHECK(row[rp] <= 1e-9); // center start: exact regime
    }

    const auto report = nlohmann::json::parse(read_file(files[1]));
    CHECK(report.at("M") == 4);
    CHECK(report.at("n") == 2);
    CHECK(report.at("classification") == "exact");
    CHECK(report.at("exact_P").get<bool>());
    CHECK(report.at("residual_P").size() == 101); // per-sample series included
    CHECK(report.at("times").size() == 101);
}

TEST_CASE("sweep emits one run per value plus a manifest") {
    const fs::path dir = make_temp_dir("sweep");
    ScenarioConfig config = small_config();
    SweepSpec sweep;
    sweep.parameter = "gamma";
    sweep.values = {0.5, 1.0, 2.0};
    config.sweep = sweep;
    const auto files = run_sweep(config, dir);
    // 3 series files + manifest
    REQUIRE(files.size() == 4);
    const auto manifest = nlohmann::json::parse(read_file(files.back()));
    CHECK(manifest.at("parameter") == "gamma");
    CHECK(manifest.at("runs").size() == 3);

    SUBCASE("invalid sweeps are rejected") {
        config.sweep->parameter = "J";
        config.system.explicit_matrix = true;
        config.system.matrix = Eigen::MatrixXd::Zero(4, 4);
        CHECK_THROWS_AS(run_sweep(config, dir), ValidationError);

        config = small_config();
        config.sweep = SweepSpec{"radius", {0.5}};
        CHECK_THROWS_AS(run_sweep(config, dir), ValidationError);

        config = small_config();
        config.sweep = SweepSpec{"voltage", {1.0}};
        CHECK_THROWS_AS(run_sweep(config, dir), ValidationError);
    }
}

TEST_CASE("emitted files round-trip byte for byte") {
    const fs::path dir = make_temp_dir("roundtrip");
    ScenarioConfig config = small_config();
    const auto files = run_simulate(config, dir);
    const std::string original = read_file(files[0]);
    CHECK(format_table(parse_table(original)) == original);
}

TEST_CASE("fully decayed conditional runs mark entanglement as undefined") {
    ScenarioConfig config = small_config();
    config.dissipative = true;
    config.system.gamma = 0.0;
    config.system.topology.J = 0.0;
    config.system.kappa = 1.0;
    config.horizon = 1600.0; // survival amplitude underflows well before this
    config.samples = 5;
    const Table table = simulate_series_table(config);
    const auto& last = table.rows.back();
    CHECK(last[table.column_index("norm")] == 0.0);
    CHECK(last[table.column_index("P")] == 0.0);
    CHECK(std::isnan(last[table.column_index("script_E_B")]));
    CHECK(std::isnan(last[table.column_index("E_BC")]));
    // early samples are still live
    CHECK(table.rows.front()[table.column_index("norm")] == doctest::Approx(1.0));
}

TEST_CASE("dissipative series tracks the conditional norm") {
    ScenarioConfig config = small_config();
    config.dissipative = true;
    config.system.Gamma = 0.15;
    config.system.kappa = 0.05;
    config.horizon = 8.0;
    config.samples = 81;
    const Table table = simulate_series_table(config);
    const int norm_col = table.column_index("norm");
    REQUIRE(norm_col >= 0);
    double prev = 1.0 + 1e-15;
    for (const auto& row : table.rows) {
        CHECK(row[norm_col] <= prev + 1e-12);
        prev = row[norm_col];
    }
    bool has_omega_c = false;
    for (const auto& comment : table.comments) {
        has_omega_c = has_omega_c || comment.rfind("omega_c:", 0) == 0;
    }
    CHECK(has_omega_c);
}

#ifdef SPINSTAR_CLI_PATH
namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(SPINSTAR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("CLI exit codes follow the documented contract") {
    const fs::path dir = make_temp_dir("cli");
    CHECK(run_cli("simulate --preset fig2 --samples 51 --out " +
                  (dir / "fig2").string()) == 0);
    CHECK(run_cli("reduce --preset fig2 --samples 51 -n 2 --out " +
                  (dir / "red").string()) == 0);
    CHECK(run_cli("reduce --preset fig2 --samples 51 -n 1 --out " +
                  (dir / "bad").string()) == 1);
    CHECK(run_cli("simulate --config /nonexistent.json --out " +
                  (dir / "cfg").string()) == 1);
    CHECK(run_cli("simulate --out " + (dir / "none").string()) == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("verify --suite bounds --seed 7") == 0);
    CHECK(run_cli("verify --suite no_such_suite --seed 7") == 1);
}

TEST_CASE("CLI simulate output is byte-identical across runs") {
    const fs::path dir = make_temp_dir("cli_det");
    REQUIRE(run_cli("simulate --preset fig2 --samples 101 --out " +
                    (dir / "a").string()) == 0);
    REQUIRE(run_cli("simulate --preset fig2 --samples 101 --out " +
                    (dir / "b").string()) == 0);
    for (const char* name :
         {"fig2_series.tsv", "fig2_equivalent_series.tsv", "fig2_residuals.tsv",
          "fig2_report.json"}) {
        CHECK(read_file(dir / "a" / name) == read_file(dir / "b" / name));
    }
}
#endif
