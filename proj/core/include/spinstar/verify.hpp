#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinstar::verify {

// One property check. `max_residual` is the quantity compared against
// `limit` (worst deviation, or worst violation for inequality checks).
// Report-only entries set asserted = false and always pass.
struct CheckResult {
    std::string name;
    bool asserted{true};
    bool passed{true};
    int cases{0};
    double max_residual{0.0};
    double limit{0.0};
    double seconds{0.0};
    std::string note;
};

struct SuiteResult {
    std::string suite;
    std::uint64_t seed{0};
    std::vector<CheckResult> checks;
    double seconds{0.0};

    bool passed() const;
    int failed_count() const;
};

std::vector<std::string> suite_names(); // bounds, oracle, equivalence, dissipative

SuiteResult run_suite(const std::string& name, std::uint64_t seed);
// Expands "all"; otherwise a single suite.
std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t seed);

// Machine-readable key=value summary, one line per check.
std::string summary_text(const SuiteResult& result);
std::string suites_to_json(const std::vector<SuiteResult>& results);

// ------------------------- individual checks --------------------------------
// Exposed so the acceptance suite can pin its own parameters.

// Closed-form vs exact-sector |b_C|^2 over seeded random symmetric systems
// (M in 2..12, mixed topologies, initial states with B(0) = 0 or b_C(0) = 0),
// t in [0, 20/gamma].
CheckResult check_oracle_closed_form(std::uint64_t seed, int n_systems,
                                     int samples, double limit);
// Deliberately asymmetric J: the closed form fed the mean Delta must disagree
// with the oracle by more than `min_disagreement`.
CheckResult check_asymmetric_counterexample(double min_disagreement);
// Non-Hermitian path at doubled grid resolution agrees with itself.
CheckResult check_oracle_self_consistency(double limit);
// Full-space sector populations stay constant (M up to max_M).
CheckResult check_sector_conservation(std::uint64_t seed, int max_M, double limit);
// Sector evolution matches the projected full-space evolution.
CheckResult check_subspace_full_agreement(double limit);
// N = M sector equals the single-excitation solution under hole relabeling.
CheckResult check_hole_duality(double limit);
// Collective two-variable closure: N = 1 and N = M residuals vanish.
CheckResult check_collective_residual_closure(double limit);
// N = 2, M = 4 residual series: emitted and finite, no assertion.
CheckResult check_collective_residual_probe();
// 2|b_j b_k*| vs the spin-flip concurrence of reduced two-qubit states from
// full-space runs, M <= 4.
CheckResult check_concurrence_general(std::uint64_t seed, double limit);

// Inequality margins (E_B - script_E_B), (E_BC - script_E_BC) over seeded
// random unitary runs.
CheckResult check_bounds(std::uint64_t seed, int n_runs, double limit);
// Equality case: common-phase bath amplitudes pin E_B to script_E_B.
CheckResult check_bounds_equality(double limit);
// Random phases make the bath margin strictly positive.
CheckResult check_bounds_phase_injection(std::uint64_t seed, double min_margin);
// Margins of a normalized conditional run; report-only.
CheckResult check_bounds_dissipative_report(std::uint64_t seed);

// P and E closure between the M-system and its n = 2 reduction for
// b_C(0) = 1 at seeded random times.
CheckResult check_eq11_closure(std::uint64_t seed, int n_times, double limit);
// The M = 10, J = gamma, b_C(0) = 1 regime: P_10 = -4 + 5 P_2 and
// E_10 = 45 script_E_2 over `samples` points.
CheckResult check_fig2_regime(int samples, double limit);
// b_C(0) = 0, uniform bath start: P residual is exact.
CheckResult check_bath_start_equivalence(double limit);
// Mixed initial condition: residual reported, not asserted.
CheckResult check_mixed_start_report();
// Omega is preserved by reduce() for every valid n.
CheckResult check_omega_preservation(std::uint64_t seed, double limit);
// reduce(reduce(S, n), m) equals reduce(S, m).
CheckResult check_reduction_composition(std::uint64_t seed, double limit);
// reduce(S, 1) always errors; reduce(S, 2) always succeeds.
CheckResult check_minimum_n_rule(std::uint64_t seed);

// Gamma = kappa = 0 conditional propagators equal the unitary ones.
CheckResult check_dissipative_reduction(double limit);
// gamma = Delta = Gamma = 0, kappa > 0: |g_C(t)| = e^{-kappa t}.
CheckResult check_pure_decay(double limit);
// Conditional norm never increases along sampled grids.
CheckResult check_norm_monotonicity(std::uint64_t seed, double uptick_tolerance);
// Omega_c -> -Omega_c leaves the propagators unchanged.
CheckResult check_branch_invariance(std::uint64_t seed, double limit);
// Conditional closed form vs the non-Hermitian sector oracle.
CheckResult check_dissipative_oracle(std::uint64_t seed, double limit);

} // namespace spinstar::verify
