#include "spinstar/renorm.hpp"

#include <cmath>

#include "spinstar/entanglement.hpp"
#include "spinstar/oracle.hpp"

namespace spinstar {

namespace {

constexpr double kCoefficientFloor = 1e-12;

void validate_target(int M, int n) {
    if (n < 2) {
        throw ReductionError("minimum reduction size is n = 2: the "
                             "entanglement coefficient beta vanishes below two "
                             "outer qubits");
    }
    if (n > M) {
        throw ReductionError("invalid reduction: n must not exceed M");
    }
}

} // namespace

namespace {

EquivalentSystem reduce_from_delta_sq(int M, double gamma, double delta_sq, int n) {
    validate_target(M, n);
    EquivalentSystem eq;
    eq.n = n;
    eq.gamma_n = gamma;
    eq.delta_n_sq = 4.0 * double(M - n) * gamma * gamma + delta_sq;
    eq.delta_n = std::sqrt(eq.delta_n_sq);
    eq.omega = std::sqrt(4.0 * double(M) * gamma * gamma + delta_sq);
    return eq;
}

} // namespace

EquivalentSystem reduce(int M, double gamma, double delta, int n) {
    return reduce_from_delta_sq(M, gamma, delta * delta, n);
}

EquivalentSystem reduce(const SpinStarSystem& system, int n, double tolerance) {
    return reduce(system.M, system.gamma, collective_coupling(system, tolerance), n);
}

EquivalentSystem reduce(const EquivalentSystem& eq, int n) {
    return reduce_from_delta_sq(eq.n, eq.gamma_n, eq.delta_n_sq, n);
}

SpinStarSystem as_spin_star(const EquivalentSystem& eq, double Gamma, double kappa) {
    TopologySpec spec;
    spec.kind = Topology::uniform_pairwise;
    spec.J = eq.delta_n / double(eq.n - 1);
    return build_topology(spec, eq.n, eq.gamma_n, Gamma, kappa);
}

TransformCoefficients transform_coefficients(Complex B0, Complex bC0, int n) {
    const double P0 = std::norm(bC0);
    const double B0_sq = std::norm(B0);
    TransformCoefficients c;
    c.alpha = B0_sq - double(n) * P0;
    c.beta = double(n) * double(n - 1) * P0 + double(n - 1) * B0_sq;
    return c;
}

ObservableSeries transform_observables(const ObservableSeries& source,
                                       const TransformCoefficients& coeffs_source,
                                       const TransformCoefficients& coeffs_target,
                                       double P_target_0, double E_target_0) {
    std::string degenerate;
    auto flag = [&degenerate](double value, const char* name) {
        if (std::abs(value) < kCoefficientFloor) {
            if (!degenerate.empty()) degenerate += ", ";
            degenerate += name;
        }
    };
    flag(coeffs_source.alpha, "alpha (source)");
    flag(coeffs_target.alpha, "alpha (target)");
    flag(coeffs_source.beta, "beta (source)");
    flag(coeffs_target.beta, "beta (target)");
    if (!degenerate.empty()) {
        throw ReductionError("degenerate transform coefficients: " + degenerate);
    }
    if (source.P.size() != source.times.size() ||
        source.E.size() != source.times.size()) {
        throw ValidationError("observable series length mismatch");
    }
    const double ratio_P = coeffs_target.alpha / coeffs_source.alpha;
    const double ratio_E = coeffs_target.beta / coeffs_source.beta;
    const double P0 = source.P.empty() ? 0.0 : source.P.front();
    const double E0 = source.E.empty() ? 0.0 : source.E.front();

    ObservableSeries out;
    out.times = source.times;
    out.P.reserve(source.P.size());
    out.E.reserve(source.E.size());
    for (std::size_t i = 0; i < source.times.size(); ++i) {
        out.P.push_back(P_target_0 + ratio_P * (source.P[i] - P0));
        out.E.push_back(E_target_0 + ratio_E * (source.E[i] - E0));
    }
    return out;
}

Complex equivalent_bath_sum(Complex B0, Complex bC0, int n) {
    const double mag = std::abs(B0);
    if (mag == 0.0) {
        return Complex(0.0, 0.0);
    }
    const Complex phase = B0 / mag;
    const double remainder = std::max(0.0, 1.0 - std::norm(bC0));
    return std::sqrt(double(n)) * std::sqrt(remainder) * phase;
}

namespace {

// P and script_E_B per sample from a collective closed-form run; dissipative
// samples are normalized before the observables are read off.
ObservableSeries collective_observables(const CollectiveParams& params, Complex B0,
                                        Complex bC0, const std::vector<double>& times,
                                        bool dissipative) {
    ObservableSeries series;
    series.times = times;
    series.P.reserve(times.size());
    series.E.reserve(times.size());
    for (double t : times) {
        CollectiveState state = evolve_collective(params, B0, bC0, t, dissipative);
        if (dissipative) {
            const double nsq = uniform_sector_norm_sq(state, params.M);
            if (nsq > 0.0) {
                const double scale = 1.0 / std::sqrt(nsq);
                state.b_C *= scale;
                state.B *= scale;
            }
        }
        series.P.push_back(std::norm(state.b_C));
        series.E.push_back(script_e_bath(state.B, state.b_C));
    }
    return series;
}

} // namespace

EquivalenceReport verify_equivalence(const SpinStarSystem& system, int n,
                                     Complex B0, Complex bC0, double horizon,
                                     int samples, bool dissipative,
                                     double tolerance,
                                     const Complex* B0_n_override) {
    if (!(horizon > 0.0)) {
        throw ValidationError("horizon must be > 0");
    }
    if (samples < 2) {
        throw ValidationError("sample count must be >= 2");
    }

    const CollectiveParams params_M = collective_params(system, tolerance);
    const EquivalentSystem eq = reduce(system.M, system.gamma, params_M.delta, n);
    const SpinStarSystem reduced =
        as_spin_star(eq, system.Gamma, system.kappa);
    const CollectiveParams params_n = collective_params(reduced, tolerance);

    EquivalenceReport report;
    report.M = system.M;
    report.n = n;
    report.gamma = system.gamma;
    report.delta_M = params_M.delta;
    report.delta_n = eq.delta_n;
    report.omega = eq.omega;
    report.dissipative = dissipative;
    report.bC0 = bC0;
    report.B0_M = B0;
    report.B0_n = B0_n_override ? *B0_n_override : equivalent_bath_sum(B0, bC0, n);
    report.coeffs_M = transform_coefficients(B0, bC0, system.M);
    report.coeffs_n = transform_coefficients(report.B0_n, bC0, n);
    report.times = linspace(0.0, horizon, samples);

    ObservableSeries run_M =
        collective_observables(params_M, B0, bC0, report.times, dissipative);
    ObservableSeries run_n =
        collective_observables(params_n, report.B0_n, bC0, report.times, dissipative);
    ObservableSeries predicted = transform_observables(
        run_M, report.coeffs_M, report.coeffs_n, run_n.P.front(), run_n.E.front());

    report.P_M = std::move(run_M.P);
    report.E_M = std::move(run_M.E);
    report.P_n = std::move(run_n.P);
    report.E_n = std::move(run_n.E);
    report.P_n_pred = std::move(predicted.P);
    report.E_n_pred = std::move(predicted.E);

    report.residual_P.reserve(report.times.size());
    report.residual_E.reserve(report.times.size());
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        report.residual_P.push_back(std::abs(report.P_n_pred[i] - report.P_n[i]));
        report.residual_E.push_back(std::abs(report.E_n_pred[i] - report.E_n[i]));
        report.max_residual_P = std::max(report.max_residual_P, report.residual_P[i]);
        report.max_residual_E = std::max(report.max_residual_E, report.residual_E[i]);
    }
    return report;
}

} // namespace spinstar
