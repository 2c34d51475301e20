#include "spinstar/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>
#include <random>

#include "json.hpp"

#include "spinstar/closedform.hpp"
#include "spinstar/entanglement.hpp"
#include "spinstar/model.hpp"
#include "spinstar/oracle.hpp"
#include "spinstar/renorm.hpp"

namespace spinstar::verify {

namespace {

// Self-contained uniform generator so summaries are reproducible across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int a, int b) {
        return a + static_cast<int>(uniform() * double(b - a + 1));
    }
    Complex unit_phase() {
        const double theta = uniform(0.0, 2.0 * std::numbers::pi);
        return Complex(std::cos(theta), std::sin(theta));
    }

private:
    std::mt19937_64 eng_;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

SpinStarSystem random_symmetric_system(Rng& rng, double Gamma = 0.0,
                                       double kappa = 0.0) {
    TopologySpec spec;
    switch (rng.uniform_int(0, 2)) {
        case 0: spec.kind = Topology::uniform_pairwise; break;
        case 1: spec.kind = Topology::nearest_neighbor; break;
        default: spec.kind = Topology::dipole_ring; break;
    }
    spec.J = rng.uniform(0.2, 2.0);
    spec.radius = rng.uniform(0.4, 1.2);
    const int M = rng.uniform_int(2, 12);
    const double gamma = rng.uniform(0.3, 2.0);
    return build_topology(spec, M, gamma, Gamma, kappa);
}

// type 0: excitation on the center (B = 0). type 1: random bath, b_C = 0.
// type 2: dark bath (amplitudes summing to zero) plus a center component.
AmplitudeState random_initial(Rng& rng, int M, int type) {
    if (type == 0) {
        return center_excitation(M);
    }
    Eigen::VectorXcd b(M);
    for (int j = 0; j < M; ++j) {
        b(j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    if (type == 1) {
        return AmplitudeState(b / b.norm(), Complex(0.0, 0.0));
    }
    b.array() -= b.mean(); // force B(0) = 0
    double bath_norm = b.norm();
    if (bath_norm < 1e-3) {
        b(0) += 1.0;
        b(M - 1) -= 1.0;
        bath_norm = b.norm();
    }
    const double center_weight = rng.uniform(0.3, 0.8);
    const Complex b_C = std::sqrt(center_weight) * rng.unit_phase();
    b *= std::sqrt(1.0 - center_weight) / bath_norm;
    return AmplitudeState(std::move(b), b_C);
}

// Worst deviation between the closed-form and exact-sector |b_C(t)|^2.
double closed_vs_oracle_P(const SpinStarSystem& system, const AmplitudeState& init,
                          const std::vector<double>& times, bool dissipative) {
    const CollectiveParams params = collective_params(system);
    const SubspaceHamiltonian H = build_subspace_hamiltonian(system, 1, dissipative);
    const EvolutionResult run = evolve_exact(H, embed_single_excitation(init), times);
    const Complex B0 = init.bath_sum();
    const Complex bC0 = init.b_center;
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const CollectiveState closed =
            evolve_collective(params, B0, bC0, times[i], dissipative);
        const double P_closed = std::norm(closed.b_C);
        const double P_oracle = std::norm(run.states[i](system.M));
        worst = std::max(worst, std::abs(P_closed - P_oracle));
    }
    return worst;
}

} // namespace

// ----------------------------- oracle checks --------------------------------

CheckResult check_oracle_closed_form(std::uint64_t seed, int n_systems,
                                     int samples, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "closed_form_vs_oracle";
    result.limit = limit;
    result.cases = n_systems;
    for (int i = 0; i < n_systems; ++i) {
        const SpinStarSystem system = random_symmetric_system(rng);
        const AmplitudeState init = random_initial(rng, system.M, i % 3);
        const auto times = linspace(0.0, 20.0 / system.gamma, samples);
        result.max_residual = std::max(
            result.max_residual, closed_vs_oracle_P(system, init, times, false));
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_asymmetric_counterexample(double min_disagreement) {
    Stopwatch watch;
    CheckResult result;
    result.name = "asymmetric_counterexample";
    result.limit = min_disagreement;
    result.cases = 1;
    result.note = "closed form fed the mean Delta must not track an "
                  "asymmetric system; pass requires residual ABOVE the limit";

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(3, 3);
    J(0, 1) = J(1, 0) = 1.0; // Delta_j = [1, 1, 0]
    const SpinStarSystem system(3, 1.0, J);
    const SymmetryReport report = check_symmetry(system);
    if (report.is_symmetric) {
        result.passed = false;
        result.note = "system unexpectedly symmetric";
        return result;
    }
    const CollectiveParams mean_params{system.M, system.gamma,
                                       report.delta_per_qubit.mean(), 0.0, 0.0};
    const SubspaceHamiltonian H = build_subspace_hamiltonian(system, 1, false);
    const auto times = linspace(0.0, 20.0, 401);
    const EvolutionResult run =
        evolve_exact(H, embed_single_excitation(center_excitation(3)), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const CollectiveState closed =
            evolve_collective(mean_params, 0.0, 1.0, times[i], false);
        result.max_residual =
            std::max(result.max_residual,
                     std::abs(std::norm(closed.b_C) - std::norm(run.states[i](3))));
    }
    result.passed = result.max_residual > min_disagreement;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_oracle_self_consistency(double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "oracle_self_consistency";
    result.limit = limit;
    result.cases = 1;

    const SpinStarSystem system =
        build_topology({Topology::uniform_pairwise, 0.7, 0.0}, 4, 1.0, 0.15, 0.3);
    const SubspaceHamiltonian H = build_subspace_hamiltonian(system, 1, true);
    const Eigen::VectorXcd psi0 = embed_single_excitation(center_excitation(4));

    const auto coarse = linspace(0.0, 12.0, 61);
    std::vector<double> fine;
    fine.reserve(coarse.size() * 2 - 1);
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
        fine.push_back(coarse[i]);
        fine.push_back(0.5 * (coarse[i] + coarse[i + 1]));
    }
    fine.push_back(coarse.back());

    const EvolutionResult run_coarse = evolve_exact(H, psi0, coarse);
    const EvolutionResult run_fine = evolve_exact(H, psi0, fine);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const double diff =
            (run_coarse.states[i] - run_fine.states[2 * i]).norm();
        result.max_residual = std::max(result.max_residual, diff);
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_sector_conservation(std::uint64_t seed, int max_M, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "full_space_sector_conservation";
    result.limit = limit;

    for (int M = 4; M <= max_M; ++M) {
        const SpinStarSystem system =
            build_topology({Topology::nearest_neighbor, rng.uniform(0.3, 1.5), 0.0},
                           M, rng.uniform(0.5, 1.5));
        const Eigen::Index dim = Eigen::Index(1) << (M + 1);
        Eigen::VectorXcd psi0(dim);
        for (Eigen::Index s = 0; s < dim; ++s) {
            psi0(s) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
        psi0.normalize();
        const auto times = linspace(0.0, 10.0, 41);
        const EvolutionResult run = evolve_full_space(system, psi0, times);
        const auto pops0 = sector_populations(run.states.front(), M);
        for (const auto& psi : run.states) {
            const auto pops = sector_populations(psi, M);
            for (std::size_t k = 0; k < pops.size(); ++k) {
                result.max_residual =
                    std::max(result.max_residual, std::abs(pops[k] - pops0[k]));
            }
        }

        // single-excitation start must not leak into other sectors
        const EvolutionResult run1 = evolve_full_space(
            system, embed_in_full_space(random_initial(rng, M, 1)), times);
        for (const auto& psi : run1.states) {
            const auto pops = sector_populations(psi, M);
            for (std::size_t k = 0; k < pops.size(); ++k) {
                if (k == 1) continue;
                result.max_residual = std::max(result.max_residual, pops[k]);
            }
        }
        result.cases += 2;
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_subspace_full_agreement(double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "subspace_vs_full_space";
    result.limit = limit;
    result.cases = 1;

    const SpinStarSystem system =
        build_topology({Topology::uniform_pairwise, 0.8, 0.0}, 3, 1.0);
    Eigen::VectorXcd b(3);
    b << Complex(0.4, 0.1), Complex(-0.3, 0.2), Complex(0.1, -0.5);
    AmplitudeState init(b, Complex(0.2, 0.3));
    init = init.normalized();

    const auto times = linspace(0.0, 15.0, 101);
    const EvolutionResult sector = evolve_exact(
        build_subspace_hamiltonian(system, 1, false),
        embed_single_excitation(init), times);
    const EvolutionResult full =
        evolve_full_space(system, embed_in_full_space(init), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (int j = 0; j < 3; ++j) {
            result.max_residual = std::max(
                result.max_residual,
                std::abs(full.states[i](1u << j) - sector.states[i](j)));
        }
        result.max_residual = std::max(
            result.max_residual,
            std::abs(full.states[i](1u << 3) - sector.states[i](3)));
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_hole_duality(double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "hole_duality_n_equals_m";
    result.limit = limit;

    const std::vector<SpinStarSystem> systems = {
        build_topology({Topology::uniform_pairwise, 0.6, 0.0}, 5, 1.0),
        build_topology({Topology::nearest_neighbor, 1.1, 0.0}, 5, 0.8),
    };
    for (const SpinStarSystem& system : systems) {
        const int M = system.M;
        const SubspaceHamiltonian H_holes = build_subspace_hamiltonian(system, M);
        const SubspaceHamiltonian H_single = build_subspace_hamiltonian(system, 1);
        const auto perm = hole_dual_permutation(H_holes);
        for (Eigen::Index i = 0; i < H_holes.dim(); ++i) {
            for (Eigen::Index j = 0; j < H_holes.dim(); ++j) {
                result.max_residual = std::max(
                    result.max_residual,
                    std::abs(H_holes.matrix(i, j) -
                             H_single.matrix(perm[i], perm[j])));
            }
        }

        // all-excited bath start: its amplitude follows the closed-form b_C
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(H_holes.dim());
        psi0(0) = 1.0;
        const auto times = linspace(0.0, 20.0 / system.gamma, 401);
        const EvolutionResult run = evolve_exact(H_holes, psi0, times);
        const CollectiveParams params = collective_params(system);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const CollectiveState closed =
                evolve_collective(params, 0.0, 1.0, times[i], false);
            result.max_residual = std::max(
                result.max_residual,
                std::abs(std::norm(run.states[i](0)) - std::norm(closed.b_C)));
        }
        result.cases += 1;
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_collective_residual_closure(double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "collective_residual_closure";
    result.limit = limit;

    const SpinStarSystem system =
        build_topology({Topology::nearest_neighbor, 0.9, 0.0}, 6, 1.0);
    const auto times = linspace(0.0, 20.0, 201);

    const SubspaceHamiltonian H1 = build_subspace_hamiltonian(system, 1);
    for (const AmplitudeState& init :
         {center_excitation(6), uniform_bath(6)}) {
        const EvolutionResult run =
            evolve_exact(H1, embed_single_excitation(init), times);
        for (double r : collective_residual(system, run)) {
            result.max_residual = std::max(result.max_residual, std::abs(r));
        }
        result.cases += 1;
    }

    // N = M: a single bath configuration, trivially symmetric
    const SubspaceHamiltonian HM = build_subspace_hamiltonian(system, 6);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(HM.dim());
    psi0(0) = 1.0;
    const EvolutionResult run = evolve_exact(HM, psi0, times);
    for (double r : collective_residual(system, run)) {
        result.max_residual = std::max(result.max_residual, std::abs(r));
    }
    result.cases += 1;

    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_collective_residual_probe() {
    Stopwatch watch;
    CheckResult result;
    result.name = "collective_residual_probe_n2";
    result.asserted = true; // only finiteness is asserted
    result.limit = std::numeric_limits<double>::infinity();
    result.cases = 1;

    const SpinStarSystem system =
        build_topology({Topology::nearest_neighbor, 1.0, 0.0}, 4, 1.0);
    const SubspaceHamiltonian H = build_subspace_hamiltonian(system, 2);
    const int n_ground = static_cast<int>(binomial(4, 2));
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(H.dim());
    for (int i = 0; i < n_ground; ++i) {
        psi0(i) = 1.0 / std::sqrt(double(n_ground));
    }
    const auto times = linspace(0.0, 20.0, 201);
    const EvolutionResult run = evolve_exact(H, psi0, times);
    bool finite = true;
    for (double r : collective_residual(system, run)) {
        finite = finite && std::isfinite(r) && r > -1e-12 && r < 1.0 + 1e-12;
        result.max_residual = std::max(result.max_residual, r);
    }
    result.passed = finite;
    result.note = "conjecture probe, no threshold; max residual " +
                  fmt(result.max_residual);
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_concurrence_general(std::uint64_t seed, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "concurrence_shortcut_vs_wootters";
    result.limit = limit;

    for (int M = 3; M <= 4; ++M) {
        const SpinStarSystem system =
            build_topology({Topology::uniform_pairwise, rng.uniform(0.3, 1.2), 0.0},
                           M, rng.uniform(0.5, 1.5));
        const AmplitudeState init = random_initial(rng, M, 1);
        const auto times = linspace(0.0, 10.0, 21);
        const EvolutionResult run =
            evolve_full_space(system, embed_in_full_space(init), times);
        for (const auto& psi : run.states) {
            auto amplitude = [&](int q) {
                return psi(Eigen::Index(1) << q);
            };
            for (int a = 0; a <= M; ++a) {
                for (int b = a + 1; b <= M; ++b) {
                    const double general = wootters_concurrence(
                        two_qubit_reduced_density(psi, M, a, b));
                    const double shortcut =
                        concurrence_pair(amplitude(a), amplitude(b));
                    result.max_residual = std::max(result.max_residual,
                                                   std::abs(general - shortcut));
                }
            }
        }
        result.cases += 1;
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

// ----------------------------- bounds checks --------------------------------

CheckResult check_bounds(std::uint64_t seed, int n_runs, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "entanglement_bound_margins";
    result.limit = limit;
    result.cases = n_runs;

    double min_bath = std::numeric_limits<double>::infinity();
    double min_center = min_bath;
    for (int i = 0; i < n_runs; ++i) {
        const SpinStarSystem system = random_symmetric_system(rng);
        const AmplitudeState init = random_initial(rng, system.M, i % 3);
        const auto times = linspace(0.0, 20.0 / system.gamma, 201);
        const EvolutionResult run =
            evolve_exact(build_subspace_hamiltonian(system, 1, false),
                         embed_single_excitation(init), times);
        const BoundReport report = verify_bounds(run);
        min_bath = std::min(min_bath, report.min_margin_bath);
        min_center = std::min(min_center, report.min_margin_center);
    }
    result.max_residual = std::max({0.0, -min_bath, -min_center});
    result.passed = result.max_residual <= limit;
    result.note = "min_margin_bath=" + fmt(min_bath) +
                  " min_margin_center=" + fmt(min_center);
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_bounds_equality(double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "bound_equality_common_phase";
    result.limit = limit;

    const SpinStarSystem system =
        build_topology({Topology::nearest_neighbor, 1.0, 0.0}, 7, 1.0);
    const auto times = linspace(0.0, 20.0, 201);
    for (const AmplitudeState& init :
         {center_excitation(7), uniform_bath(7)}) {
        const EvolutionResult run =
            evolve_exact(build_subspace_hamiltonian(system, 1, false),
                         embed_single_excitation(init), times);
        const BoundReport report = verify_bounds(run);
        for (double margin : report.margin_bath) {
            result.max_residual = std::max(result.max_residual, std::abs(margin));
        }
        result.cases += 1;
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_bounds_phase_injection(std::uint64_t seed, double min_margin) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "bound_strict_with_random_phases";
    result.limit = min_margin;
    result.note = "pass requires every injected-state margin ABOVE the limit";

    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
        const int M = rng.uniform_int(3, 10);
        const AmplitudeState state = random_initial(rng, M, 1);
        const EntanglementSnapshot snap = entanglement_snapshot(state);
        worst = std::min(worst, snap.E_B - snap.script_E_B);
        result.cases += 1;
    }
    result.max_residual = worst;
    result.passed = worst > min_margin;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_bounds_dissipative_report(std::uint64_t seed) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "bounds_dissipative_normalized";
    result.asserted = false;
    result.cases = 3;

    double min_bath = std::numeric_limits<double>::infinity();
    double min_center = min_bath;
    for (int i = 0; i < 3; ++i) {
        const SpinStarSystem system = random_symmetric_system(
            rng, rng.uniform(0.02, 0.3), rng.uniform(0.02, 0.3));
        const AmplitudeState init = random_initial(rng, system.M, 1);
        const auto times = linspace(0.0, 10.0 / system.gamma, 101);
        const EvolutionResult run =
            evolve_exact(build_subspace_hamiltonian(system, 1, true),
                         embed_single_excitation(init), times);
        const BoundReport report = verify_bounds(run);
        min_bath = std::min(min_bath, report.min_margin_bath);
        min_center = std::min(min_center, report.min_margin_center);
    }
    result.max_residual = std::max({0.0, -min_bath, -min_center});
    result.note = "reported only: min_margin_bath=" + fmt(min_bath) +
                  " min_margin_center=" + fmt(min_center);
    result.passed = true;
    result.seconds = watch.seconds();
    return result;
}

// --------------------------- equivalence checks -----------------------------

CheckResult check_eq11_closure(std::uint64_t seed, int n_times, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "center_start_closure";
    result.limit = limit;
    result.cases = n_times;

    const int n_systems = 5;
    for (int s = 0; s < n_systems; ++s) {
        const SpinStarSystem system = random_symmetric_system(rng);
        const int M = system.M;
        const CollectiveParams params = collective_params(system);
        const EquivalentSystem eq = reduce(system, 2);
        const CollectiveParams params2{2, system.gamma, eq.delta_n, 0.0, 0.0};
        for (int i = 0; i < n_times / n_systems; ++i) {
            const double t = rng.uniform(0.0, 30.0 / system.gamma);
            const CollectiveState big = evolve_collective(params, 0.0, 1.0, t);
            const CollectiveState small = evolve_collective(params2, 0.0, 1.0, t);
            const double P_M = std::norm(big.b_C);
            const double P_2 = std::norm(small.b_C);
            result.max_residual =
                std::max(result.max_residual,
                         std::abs((P_M - 1.0) - (double(M) / 2.0) * (P_2 - 1.0)));
            const double E_M = script_e_bath(big.B, big.b_C);
            const double E_2 = script_e_bath(small.B, small.b_C);
            result.max_residual = std::max(
                result.max_residual,
                std::abs(E_M - double(M) * double(M - 1) / 2.0 * E_2));
        }
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_fig2_regime(int samples, double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "m10_reduction_regime";
    result.limit = limit;
    result.cases = samples;

    // M = 10 ring with J = gamma = 1, excitation on the center
    const SpinStarSystem system =
        build_topology({Topology::nearest_neighbor, 1.0, 0.0}, 10, 1.0);
    const CollectiveParams params = collective_params(system);
    const EquivalentSystem eq = reduce(system, 2);
    const CollectiveParams params2{2, 1.0, eq.delta_n, 0.0, 0.0};
    const auto times = linspace(0.0, 20.0, samples);
    for (double t : times) {
        const CollectiveState big = evolve_collective(params, 0.0, 1.0, t);
        const CollectiveState small = evolve_collective(params2, 0.0, 1.0, t);
        const double P_10 = std::norm(big.b_C);
        const double P_2 = std::norm(small.b_C);
        result.max_residual = std::max(result.max_residual,
                                       std::abs(P_10 - (-4.0 + 5.0 * P_2)));
        const double E_10 = script_e_bath(big.B, big.b_C);
        const double E_2 = script_e_bath(small.B, small.b_C);
        result.max_residual =
            std::max(result.max_residual, std::abs(E_10 - 45.0 * E_2));
    }

    // and through the report pipeline
    const EquivalenceReport report =
        verify_equivalence(system, 2, Complex(0.0), Complex(1.0), 20.0, samples);
    result.max_residual = std::max(
        {result.max_residual, report.max_residual_P, report.max_residual_E});
    result.note = "classification=" + report.classification();
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_bath_start_equivalence(double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "bath_start_equivalence";
    result.limit = limit;

    const std::vector<SpinStarSystem> systems = {
        build_topology({Topology::nearest_neighbor, 0.9, 0.0}, 5, 1.2),
        build_topology({Topology::uniform_pairwise, 0.4, 0.0}, 9, 0.7),
    };
    double max_E = 0.0;
    for (const SpinStarSystem& system : systems) {
        const Complex B0 = std::sqrt(double(system.M));
        const EquivalenceReport report = verify_equivalence(
            system, 2, B0, Complex(0.0), 20.0 / system.gamma, 801);
        result.max_residual = std::max(result.max_residual, report.max_residual_P);
        max_E = std::max(max_E, report.max_residual_E);
        result.cases += 1;
    }
    result.note = "E residual (reported): " + fmt(max_E);
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_mixed_start_report() {
    Stopwatch watch;
    CheckResult result;
    result.name = "mixed_start_residual";
    result.asserted = false;
    result.cases = 1;

    // |b_C(0)|^2 = 0.5 would make alpha vanish exactly; use 0.3.
    const SpinStarSystem system =
        build_topology({Topology::uniform_pairwise, 1.0, 0.0}, 8, 1.0);
    const Complex bC0 = std::sqrt(0.3);
    const Complex B0 = std::sqrt(double(system.M) * 0.7);
    const EquivalenceReport report =
        verify_equivalence(system, 2, B0, bC0, 20.0, 801);
    result.max_residual =
        std::max(report.max_residual_P, report.max_residual_E);
    result.note = "reported only (generically nonzero): P=" +
                  fmt(report.max_residual_P) +
                  " E=" + fmt(report.max_residual_E) +
                  " classification=" + report.classification();
    result.passed = true;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_omega_preservation(std::uint64_t seed, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "omega_preservation";
    result.limit = limit;

    for (int i = 0; i < 10; ++i) {
        const SpinStarSystem system = random_symmetric_system(rng);
        const double omega = collective_frequency(system);
        for (int n = 2; n <= system.M; ++n) {
            const EquivalentSystem eq = reduce(system, n);
            const double omega_n = collective_frequency(n, eq.gamma_n, eq.delta_n);
            result.max_residual =
                std::max(result.max_residual,
                         std::abs(omega_n - omega) / std::max(1.0, omega));
            result.cases += 1;
        }
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_reduction_composition(std::uint64_t seed, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "reduction_composition";
    result.limit = limit;

    for (int i = 0; i < 10; ++i) {
        const SpinStarSystem system = random_symmetric_system(rng);
        if (system.M < 3) continue;
        const int n = rng.uniform_int(2, system.M);
        const int m = rng.uniform_int(2, n);
        const EquivalentSystem direct = reduce(system, m);
        const EquivalentSystem composed = reduce(reduce(system, n), m);
        result.max_residual =
            std::max(result.max_residual,
                     std::abs(composed.delta_n - direct.delta_n) /
                         std::max(1.0, std::abs(direct.delta_n)));
        result.cases += 1;
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_minimum_n_rule(std::uint64_t seed) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "minimum_n_rule";
    result.limit = 0.0;

    bool ok = true;
    for (int i = 0; i < 5; ++i) {
        const SpinStarSystem system = random_symmetric_system(rng);
        try {
            (void)reduce(system, 1);
            ok = false; // must throw
        } catch (const ReductionError&) {
        }
        try {
            const EquivalentSystem eq = reduce(system, 2);
            ok = ok && std::isfinite(eq.delta_n);
        } catch (const Error&) {
            ok = false;
        }
        result.cases += 1;
    }
    result.passed = ok;
    result.note = "reduce(S, 1) rejected, reduce(S, 2) accepted";
    result.seconds = watch.seconds();
    return result;
}

// --------------------------- dissipative checks -----------------------------

namespace {

double propagator_distance(const PropagatorSet& a, const PropagatorSet& b) {
    return std::max({std::abs(a.f_C - b.f_C), std::abs(a.g_C - b.g_C),
                     std::abs(a.f_B - b.f_B), std::abs(a.g_B - b.g_B)});
}

} // namespace

CheckResult check_dissipative_reduction(double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "dissipative_reduction_to_unitary";
    result.limit = limit;
    result.cases = 1;

    const SpinStarSystem system =
        build_topology({Topology::nearest_neighbor, 0.8, 0.0}, 6, 1.0);
    const CollectiveParams params = collective_params(system);
    for (double t : linspace(0.0, 10.0 / system.gamma, 101)) {
        result.max_residual =
            std::max(result.max_residual,
                     propagator_distance(propagators_dissipative(params, t),
                                         propagators_unitary(params, t)));
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_pure_decay(double limit) {
    Stopwatch watch;
    CheckResult result;
    result.name = "pure_central_decay";
    result.limit = limit;
    result.cases = 2;

    const double kappa = 0.7;
    const SpinStarSystem system(3, 0.0, Eigen::MatrixXd::Zero(3, 3), 0.0, kappa);
    const CollectiveParams params = collective_params(system);
    const auto times = linspace(0.0, 12.0, 241);
    for (double t : times) {
        const PropagatorSet p = propagators_dissipative(params, t);
        result.max_residual = std::max(
            result.max_residual, std::abs(std::abs(p.g_C) - std::exp(-kappa * t)));
    }

    // cross-check against the non-Hermitian oracle
    const EvolutionResult run =
        evolve_exact(build_subspace_hamiltonian(system, 1, true),
                     embed_single_excitation(center_excitation(3)), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        result.max_residual = std::max(
            result.max_residual,
            std::abs(std::abs(run.states[i](3)) - std::exp(-kappa * times[i])));
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_norm_monotonicity(std::uint64_t seed, double uptick_tolerance) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "conditional_norm_monotone";
    result.limit = uptick_tolerance;

    for (int i = 0; i < 10; ++i) {
        const SpinStarSystem system = random_symmetric_system(
            rng, rng.uniform(0.0, 1.5), rng.uniform(0.0, 1.5));
        const AmplitudeState init = random_initial(rng, system.M, i % 3);
        const auto times = linspace(0.0, 15.0 / system.gamma, 201);
        const EvolutionResult run =
            evolve_exact(build_subspace_hamiltonian(system, 1, true),
                         embed_single_excitation(init), times);
        for (std::size_t k = 1; k < run.norms.size(); ++k) {
            result.max_residual = std::max(
                result.max_residual, run.norms[k] - run.norms[k - 1]);
        }
        result.cases += 1;
    }
    result.max_residual = std::max(result.max_residual, 0.0);
    result.passed = result.max_residual <= uptick_tolerance;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_branch_invariance(std::uint64_t seed, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "omega_branch_invariance";
    result.limit = limit;

    for (int i = 0; i < 10; ++i) {
        const SpinStarSystem system = random_symmetric_system(
            rng, rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
        const CollectiveParams params = collective_params(system);
        const Complex omega = dissipative_params(params).Omega_c;
        for (double t : linspace(0.0, 12.0 / system.gamma, 41)) {
            result.max_residual = std::max(
                result.max_residual,
                propagator_distance(
                    detail::dissipative_propagators_with_omega(params, omega, t),
                    detail::dissipative_propagators_with_omega(params, -omega, t)));
        }
        result.cases += 1;
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

CheckResult check_dissipative_oracle(std::uint64_t seed, double limit) {
    Stopwatch watch;
    Rng rng(seed);
    CheckResult result;
    result.name = "dissipative_closed_form_vs_oracle";
    result.limit = limit;
    result.cases = 10;

    for (int i = 0; i < 10; ++i) {
        const SpinStarSystem system = random_symmetric_system(
            rng, rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
        const AmplitudeState init = random_initial(rng, system.M, i % 3);
        const auto times = linspace(0.0, 15.0 / system.gamma, 151);
        result.max_residual = std::max(
            result.max_residual, closed_vs_oracle_P(system, init, times, true));
    }
    result.passed = result.max_residual <= limit;
    result.seconds = watch.seconds();
    return result;
}

// --------------------------------- suites -----------------------------------

bool SuiteResult::passed() const {
    for (const auto& check : checks) {
        if (check.asserted && !check.passed) return false;
    }
    return true;
}

int SuiteResult::failed_count() const {
    int failed = 0;
    for (const auto& check : checks) {
        if (check.asserted && !check.passed) ++failed;
    }
    return failed;
}

std::vector<std::string> suite_names() {
    return {"bounds", "oracle", "equivalence", "dissipative"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    Stopwatch watch;
    SuiteResult suite;
    suite.suite = name;
    suite.seed = seed;
    if (name == "bounds") {
        suite.checks.push_back(check_bounds(seed, 100, 1e-10));
        suite.checks.push_back(check_bounds_equality(1e-10));
        suite.checks.push_back(check_bounds_phase_injection(seed, 1e-6));
        suite.checks.push_back(check_bounds_dissipative_report(seed));
    } else if (name == "oracle") {
        suite.checks.push_back(check_oracle_closed_form(seed, 50, 2001, 1e-8));
        suite.checks.push_back(check_asymmetric_counterexample(1e-3));
        suite.checks.push_back(check_oracle_self_consistency(1e-11));
        suite.checks.push_back(check_sector_conservation(seed, 6, 1e-12));
        suite.checks.push_back(check_subspace_full_agreement(1e-10));
        suite.checks.push_back(check_hole_duality(1e-9));
        suite.checks.push_back(check_collective_residual_closure(1e-10));
        suite.checks.push_back(check_collective_residual_probe());
        suite.checks.push_back(check_concurrence_general(seed, 1e-9));
    } else if (name == "equivalence") {
        suite.checks.push_back(check_omega_preservation(seed, 1e-12));
        suite.checks.push_back(check_reduction_composition(seed, 1e-12));
        suite.checks.push_back(check_eq11_closure(seed, 10000, 1e-10));
        suite.checks.push_back(check_fig2_regime(2001, 1e-9));
        suite.checks.push_back(check_bath_start_equivalence(1e-9));
        suite.checks.push_back(check_minimum_n_rule(seed));
        suite.checks.push_back(check_mixed_start_report());
    } else if (name == "dissipative") {
        suite.checks.push_back(check_dissipative_reduction(1e-12));
        suite.checks.push_back(check_pure_decay(1e-10));
        suite.checks.push_back(check_norm_monotonicity(seed, 1e-12));
        suite.checks.push_back(check_branch_invariance(seed, 1e-12));
        suite.checks.push_back(check_dissipative_oracle(seed, 1e-8));
    } else {
        throw ValidationError("unknown verification suite: " + name);
    }
    suite.seconds = watch.seconds();
    return suite;
}

std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t seed) {
    if (name != "all") {
        return {run_suite(name, seed)};
    }
    // suites fan out over workers; checks stay sequential inside a suite so
    // reporting order is stable
    const auto names = suite_names();
    std::vector<std::future<SuiteResult>> futures;
    futures.reserve(names.size());
    for (const auto& suite : names) {
        futures.push_back(std::async(std::launch::async, run_suite, suite, seed));
    }
    std::vector<SuiteResult> results;
    results.reserve(names.size());
    for (auto& future : futures) {
        results.push_back(future.get());
    }
    return results;
}

std::string summary_text(const SuiteResult& result) {
    std::string out;
    out += "suite=" + result.suite + " seed=" + std::to_string(result.seed) +
           " checks=" + std::to_string(result.checks.size()) +
           " failed=" + std::to_string(result.failed_count()) +
           " status=" + (result.passed() ? "pass" : "FAIL") +
           " elapsed_s=" + fmt(result.seconds) + "\n";
    for (const auto& check : result.checks) {
        out += "check=" + check.name;
        out += " status=";
        if (!check.asserted) {
            out += "report";
        } else {
            out += check.passed ? "pass" : "FAIL";
        }
        out += " cases=" + std::to_string(check.cases);
        out += " max_residual=" + fmt(check.max_residual);
        out += " limit=" + fmt(check.limit);
        out += " elapsed_s=" + fmt(check.seconds);
        if (!check.note.empty()) {
            out += " note=" + check.note;
        }
        out += "\n";
    }
    return out;
}

std::string suites_to_json(const std::vector<SuiteResult>& results) {
    nlohmann::ordered_json j;
    j["suites"] = nlohmann::ordered_json::array();
    bool all_passed = true;
    for (const auto& result : results) {
        nlohmann::ordered_json s;
        s["suite"] = result.suite;
        s["seed"] = result.seed;
        s["passed"] = result.passed();
        s["elapsed_s"] = result.seconds;
        s["checks"] = nlohmann::ordered_json::array();
        for (const auto& check : result.checks) {
            nlohmann::ordered_json c;
            c["name"] = check.name;
            c["asserted"] = check.asserted;
            c["passed"] = check.passed;
            c["cases"] = check.cases;
            c["max_residual"] = check.max_residual;
            c["limit"] = check.limit;
            c["elapsed_s"] = check.seconds;
            if (!check.note.empty()) c["note"] = check.note;
            s["checks"].push_back(std::move(c));
        }
        all_passed = all_passed && result.passed();
        j["suites"].push_back(std::move(s));
    }
    j["passed"] = all_passed;
    return j.dump(2) + "\n";
}

} // namespace spinstar::verify
