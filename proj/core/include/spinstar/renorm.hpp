#pragma once

#include <string>
#include <vector>

#include "spinstar/closedform.hpp"
#include "spinstar/model.hpp"

namespace spinstar {

// An (n+1)-qubit stand-in for an (M+1)-qubit system, chosen so both share the
// collective frequency: 4 M gamma^2 + Delta^2 = 4 n gamma_n^2 + Delta_n^2
// with gamma_n = gamma, i.e. Delta_n = sqrt(4 (M - n) gamma^2 + Delta^2).
// delta_n is the non-negative root; collective observables depend on Delta
// only through its square, so the sign carries no information here.
struct EquivalentSystem {
    int n{2};
    double gamma_n{0.0};
    double delta_n{0.0};
    double delta_n_sq{0.0}; // kept separately so compositions stay exact
    double omega{0.0};      // shared collective frequency
};

// n must satisfy 2 <= n <= M: below two outer qubits the entanglement
// transform coefficient beta vanishes identically.
EquivalentSystem reduce(int M, double gamma, double delta, int n);
EquivalentSystem reduce(const SpinStarSystem& system, int n,
                        double tolerance = kDefaultSymmetryTolerance);
// Further reduction of an already-reduced system (composition).
EquivalentSystem reduce(const EquivalentSystem& eq, int n);

// Materialize the equivalent system as a uniform-pairwise spin star whose
// row sums equal delta_n.
SpinStarSystem as_spin_star(const EquivalentSystem& eq, double Gamma = 0.0,
                            double kappa = 0.0);

// Coefficients of the affine observable transform between equivalent
// systems: alpha = |B(0)|^2 - n P(0), beta = n (n-1) P(0) + (n-1) |B(0)|^2
// with P(0) = |b_C(0)|^2.
struct TransformCoefficients {
    double alpha{0.0};
    double beta{0.0};
};

TransformCoefficients transform_coefficients(Complex B0, Complex bC0, int n);

// P(t) = |b_C(t)|^2 and E(t) = script_E_B(t) sampled on a common grid.
struct ObservableSeries {
    std::vector<double> times;
    std::vector<double> P;
    std::vector<double> E;
};

// Maps a simulated source series onto the target system:
//   P_target(t) = P_target(0) + (alpha_target / alpha_source) (P(t) - P(0))
//   E_target(t) = E_target(0) + (beta_target  / beta_source ) (E(t) - E(0))
// The inverse direction is the same call with the roles swapped. Throws
// ReductionError when a needed coefficient is below 1e-12 in magnitude.
ObservableSeries transform_observables(const ObservableSeries& source,
                                       const TransformCoefficients& coeffs_source,
                                       const TransformCoefficients& coeffs_target,
                                       double P_target_0, double E_target_0);

// ------------------------- equivalence verification -------------------------

struct EquivalenceReport {
    int M{0};
    int n{0};
    double gamma{0.0};
    double delta_M{0.0};
    double delta_n{0.0};
    double omega{0.0};
    bool dissipative{false};
    Complex bC0{0.0, 0.0};
    Complex B0_M{0.0, 0.0};
    Complex B0_n{0.0, 0.0};
    TransformCoefficients coeffs_M;
    TransformCoefficients coeffs_n;

    std::vector<double> times;
    std::vector<double> P_M, E_M;           // original system
    std::vector<double> P_n, E_n;           // equivalent system, simulated
    std::vector<double> P_n_pred, E_n_pred; // transformed from the original
    std::vector<double> residual_P, residual_E;
    double max_residual_P{0.0};
    double max_residual_E{0.0};
    double exact_threshold{1e-9};

    bool exact_P() const { return max_residual_P <= exact_threshold; }
    bool exact_E() const { return max_residual_E <= exact_threshold; }
    std::string classification() const {
        return (exact_P() && exact_E()) ? "exact" : "approximate";
    }
};

// Simulates the original and the reduced system with the closed-form
// propagators, transforms the original observables onto the equivalent
// system, and reports the residuals. The equivalent system keeps b_C(0) and
// starts its bath in the uniform state with
//   B_n(0) = sqrt(n) sqrt(1 - |b_C(0)|^2) phase(B(0))   when |B(0)| > 0,
// else B_n(0) = 0 (overridable through B0_n_override). Dissipative systems
// are accepted; their residuals are reported, not asserted.
EquivalenceReport verify_equivalence(const SpinStarSystem& system, int n,
                                     Complex B0, Complex bC0, double horizon,
                                     int samples, bool dissipative = false,
                                     double tolerance = kDefaultSymmetryTolerance,
                                     const Complex* B0_n_override = nullptr);

// The default initial-condition policy above, exposed for reuse.
Complex equivalent_bath_sum(Complex B0, Complex bC0, int n);

} // namespace spinstar
