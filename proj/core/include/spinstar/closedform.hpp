#pragma once

#include <vector>

#include "spinstar/model.hpp"

namespace spinstar {

// Collective parameters extracted once from a symmetric system, so that time
// loops do not re-run the symmetry check per sample.
struct CollectiveParams {
    int M{0};
    double gamma{0.0};
    double delta{0.0}; // common row sum of the coupling matrix
    double Gamma{0.0};
    double kappa{0.0};
};

CollectiveParams collective_params(const SpinStarSystem& system,
                                   double tolerance = kDefaultSymmetryTolerance);

// The four propagator functions at a fixed time. The collective pair evolves
// as
//     b_C(t) = g_C(t) b_C(0) + f_C(t) B(0)
//     B(t)   = g_B(t) b_C(0) - f_B(t) B(0)
// Sign convention: f_B carries a negated cos term, so f_B(0) = -1 and the
// B <- B propagator element is -f_B.
struct PropagatorSet {
    Complex f_C, g_C, f_B, g_B;
};

// Parameters of the conditional (no-jump) evolution. X collects the total
// damping and collective detuning, delta = Gamma - kappa is the effective
// dissipation asymmetry, and Omega_c is the (generally complex) collective
// frequency. With Gamma = kappa = 0 these reduce to X = i Delta, delta = 0
// and the real Omega of the unitary case.
struct DissipativeParams {
    Complex X;       // kappa + Gamma + i Delta
    double delta;    // Gamma - kappa
    Complex Omega_c; // sqrt(4 M gamma^2 - (delta + i Delta)^2), principal root
};

DissipativeParams dissipative_params(const CollectiveParams& params);
DissipativeParams dissipative_params(const SpinStarSystem& system,
                                     double tolerance = kDefaultSymmetryTolerance);

// Unitary propagators: u = sin(Omega t/2), v = cos(Omega t/2),
//     f_C = -i e^{-i Delta t/2} 2 gamma u / Omega
//     g_C =    e^{-i Delta t/2} [(i Delta/Omega) u + v]
//     f_B =    e^{-i Delta t/2} [(i Delta/Omega) u - v]
//     g_B = -i e^{-i Delta t/2} 2 M gamma u / Omega
// The Omega = 0 point (gamma = Delta = 0) uses the limit u/Omega -> t/2.
PropagatorSet propagators_unitary(const CollectiveParams& params, double t);
PropagatorSet propagators_unitary(const SpinStarSystem& system, double t);

// Conditional no-jump propagators: same shape with e^{-X t/2} in front,
// (delta + i Delta)/Omega_c in the bracket, and u, v evaluated at the complex
// argument Omega_c t / 2. Branch-independent: Omega_c -> -Omega_c leaves all
// four functions unchanged.
PropagatorSet propagators_dissipative(const CollectiveParams& params, double t);
PropagatorSet propagators_dissipative(const SpinStarSystem& system, double t);

// The collective pair at one instant.
struct CollectiveState {
    Complex B;
    Complex b_C;
    double t{0.0};
};

// Applies the 2x2 propagator to (B0, bC0). Dissipative results are raw
// conditional amplitudes; the caller normalizes when a state is needed.
CollectiveState evolve_collective(const CollectiveParams& params, Complex B0,
                                  Complex bC0, double t, bool dissipative = false);
CollectiveState evolve_collective(const SpinStarSystem& system, Complex B0,
                                  Complex bC0, double t, bool dissipative = false);

std::vector<CollectiveState> evolve_collective_series(const CollectiveParams& params,
                                                      Complex B0, Complex bC0,
                                                      const std::vector<double>& times,
                                                      bool dissipative = false);

// |b_C|^2 + |B|^2 / M: the squared norm of a uniform-sector state expressed
// through its collective pair.
double uniform_sector_norm_sq(const CollectiveState& state, int M);

// Central-qubit reduced density: p0 pairs with |b_C|^2 and p1 = 1 - |b_C|^2,
// sigma_z = 2 |b_C|^2 - 1. Requires |b_C|^2 <= 1 + 1e-10.
struct CentralQubitDensity {
    double p0;
    double p1;
    double sigma_z;
};

CentralQubitDensity central_qubit_density(Complex b_C);

namespace detail {

// Propagators evaluated with an explicitly supplied collective frequency;
// used to exercise the Omega -> -Omega branch invariance.
PropagatorSet dissipative_propagators_with_omega(const CollectiveParams& params,
                                                 Complex omega, double t);

} // namespace detail

} // namespace spinstar
