#include "spinstar/closedform.hpp"

#include <cmath>

namespace spinstar {

namespace {

constexpr Complex kI{0.0, 1.0};

// sin(z)/z series, so Omega = 0 is a removable singularity.
Complex sinc_series(Complex z) {
    const Complex z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
}

// Shared evaluator. `damping` is X (i Delta in the unitary case), `bracket`
// is delta + i Delta, `omega` the collective frequency. The damped
// oscillations are evaluated through the mode exponents (+-i omega - X) t/2
// rather than as exp(-X t/2) times sin/cos: the exponents are contraction
// exponents (non-positive real part for physical rates), so nothing
// overflows even when the separate factors would.
PropagatorSet eval_propagators(int M, double gamma, Complex damping,
                               Complex bracket, Complex omega, double t) {
    const Complex e_plus = std::exp((kI * omega - damping) * t / 2.0);
    const Complex e_minus = std::exp((-kI * omega - damping) * t / 2.0);
    const Complex pv = 0.5 * (e_plus + e_minus); // e^{-Xt/2} v(t)
    const Complex z = omega * t / 2.0;
    // e^{-Xt/2} u(t) / Omega
    const Complex pu = std::abs(z) < 1e-4
                           ? std::exp(-damping * t / 2.0) * (t / 2.0) * sinc_series(z)
                           : (e_plus - e_minus) / (2.0 * kI * omega);

    PropagatorSet p;
    p.f_C = -kI * 2.0 * gamma * pu;
    p.g_C = bracket * pu + pv;
    p.f_B = bracket * pu - pv;
    p.g_B = -kI * 2.0 * double(M) * gamma * pu;
    return p;
}

} // namespace

CollectiveParams collective_params(const SpinStarSystem& system, double tolerance) {
    return CollectiveParams{system.M, system.gamma,
                            collective_coupling(system, tolerance),
                            system.Gamma, system.kappa};
}

DissipativeParams dissipative_params(const CollectiveParams& p) {
    DissipativeParams d;
    d.X = Complex(p.kappa + p.Gamma, p.delta);
    d.delta = p.Gamma - p.kappa;
    const Complex s(d.delta, p.delta); // delta + i Delta
    d.Omega_c = std::sqrt(4.0 * p.M * p.gamma * p.gamma - s * s);
    return d;
}

DissipativeParams dissipative_params(const SpinStarSystem& system, double tolerance) {
    return dissipative_params(collective_params(system, tolerance));
}

PropagatorSet propagators_unitary(const CollectiveParams& p, double t) {
    const double omega = collective_frequency(p.M, p.gamma, p.delta);
    return eval_propagators(p.M, p.gamma, kI * p.delta, kI * p.delta, omega, t);
}

PropagatorSet propagators_unitary(const SpinStarSystem& system, double t) {
    return propagators_unitary(collective_params(system), t);
}

PropagatorSet propagators_dissipative(const CollectiveParams& p, double t) {
    const DissipativeParams d = dissipative_params(p);
    return eval_propagators(p.M, p.gamma, d.X, Complex(d.delta, p.delta),
                            d.Omega_c, t);
}

PropagatorSet propagators_dissipative(const SpinStarSystem& system, double t) {
    return propagators_dissipative(collective_params(system), t);
}

PropagatorSet detail::dissipative_propagators_with_omega(const CollectiveParams& p,
                                                         Complex omega, double t) {
    const DissipativeParams d = dissipative_params(p);
    return eval_propagators(p.M, p.gamma, d.X, Complex(d.delta, p.delta), omega, t);
}

CollectiveState evolve_collective(const CollectiveParams& params, Complex B0,
                                  Complex bC0, double t, bool dissipative) {
    const PropagatorSet p = dissipative ? propagators_dissipative(params, t)
                                        : propagators_unitary(params, t);
    CollectiveState out;
    out.t = t;
    out.b_C = p.g_C * bC0 + p.f_C * B0;
    out.B = p.g_B * bC0 - p.f_B * B0;
    return out;
}

CollectiveState evolve_collective(const SpinStarSystem& system, Complex B0,
                                  Complex bC0, double t, bool dissipative) {
    return evolve_collective(collective_params(system), B0, bC0, t, dissipative);
}

std::vector<CollectiveState> evolve_collective_series(const CollectiveParams& params,
                                                      Complex B0, Complex bC0,
                                                      const std::vector<double>& times,
                                                      bool dissipative) {
    std::vector<CollectiveState> out;
    out.reserve(times.size());
    for (double t : times) {
        out.push_back(evolve_collective(params, B0, bC0, t, dissipative));
    }
    return out;
}

double uniform_sector_norm_sq(const CollectiveState& state, int M) {
    return std::norm(state.b_C) + std::norm(state.B) / double(M);
}

CentralQubitDensity central_qubit_density(Complex b_C) {
    const double p = std::norm(b_C);
    if (p > 1.0 + 1e-10) {
        throw ContractError("central amplitude norm exceeds 1: |b_C|^2 = " +
                            std::to_string(p));
    }
    return CentralQubitDensity{p, 1.0 - p, 2.0 * p - 1.0};
}

} // namespace spinstar
