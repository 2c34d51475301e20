#include "spinstar/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace spinstar {

double concurrence_pair(Complex bj, Complex bk) {
    return 2.0 * std::abs(bj * std::conj(bk));
}

double script_e_bath(Complex B, Complex b_C) {
    return std::abs(-1.0 + std::norm(B) + std::norm(b_C));
}

double script_e_bath_center(Complex b_C) {
    const double p = std::norm(b_C);
    return 4.0 * p * (1.0 - p);
}

namespace {

EntanglementSnapshot make_snapshot(const AmplitudeState& state, double t) {
    const int M = state.M();
    EntanglementSnapshot snap;
    snap.t = t;
    snap.concurrences_bath = Eigen::MatrixXd::Zero(M, M);
    snap.concurrences_center.resize(M);
    for (int j = 0; j < M; ++j) {
        for (int k = j + 1; k < M; ++k) {
            const double c = concurrence_pair(state.b(j), state.b(k));
            snap.concurrences_bath(j, k) = c;
            snap.concurrences_bath(k, j) = c;
            snap.E_B += c;
        }
        snap.concurrences_center(j) = concurrence_pair(state.b(j), state.b_center);
        snap.E_BC += snap.concurrences_center(j);
    }
    snap.script_E_B = script_e_bath(state.bath_sum(), state.b_center);
    snap.script_E_BC = script_e_bath_center(state.b_center);
    return snap;
}

} // namespace

EntanglementSnapshot entanglement_snapshot(const AmplitudeState& state, double t) {
    if (std::abs(state.norm_sq() - 1.0) > 1e-8) {
        throw ContractError("entanglement snapshot requires a normalized state");
    }
    return make_snapshot(state, t);
}

EntanglementSnapshot entanglement_snapshot_raw(const AmplitudeState& state, double t) {
    return make_snapshot(state, t);
}

BoundReport verify_bounds(const EvolutionResult& result) {
    BoundReport report;
    report.times = result.times;
    report.margin_bath.reserve(result.states.size());
    report.margin_center.reserve(result.states.size());
    for (std::size_t i = 0; i < result.states.size(); ++i) {
        const EntanglementSnapshot snap =
            entanglement_snapshot(result.amplitude_state(i).normalized(),
                                  result.times[i]);
        report.margin_bath.push_back(snap.E_B - snap.script_E_B);
        report.margin_center.push_back(snap.E_BC - snap.script_E_BC);
    }
    report.min_margin_bath =
        *std::min_element(report.margin_bath.begin(), report.margin_bath.end());
    report.min_margin_center =
        *std::min_element(report.margin_center.begin(), report.margin_center.end());
    return report;
}

Eigen::Matrix4cd two_qubit_reduced_density(const Eigen::VectorXcd& full_state,
                                           int M, int qubit_a, int qubit_b) {
    const Eigen::Index dim = Eigen::Index(1) << (M + 1);
    if (full_state.size() != dim) {
        throw ValidationError("state dimension does not match M");
    }
    if (qubit_a < 0 || qubit_a > M || qubit_b < 0 || qubit_b > M ||
        qubit_a == qubit_b) {
        throw ValidationError("invalid qubit pair");
    }
    const std::uint32_t bit_a = 1u << qubit_a;
    const std::uint32_t bit_b = 1u << qubit_b;

    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s) {
        const int row = 2 * ((s & bit_a) ? 1 : 0) + ((s & bit_b) ? 1 : 0);
        const std::uint32_t rest = s & ~(bit_a | bit_b);
        for (int col = 0; col < 4; ++col) {
            const std::uint32_t s2 = rest | ((col & 2) ? bit_a : 0u) |
                                     ((col & 1) ? bit_b : 0u);
            rho(row, col) += full_state(s) * std::conj(full_state(s2));
        }
    }
    return rho;
}

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
    // sigma_y x sigma_y in the |q_a q_b> basis
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    // The four lambda_i are the singular values of sqrt(rho) yy conj(sqrt(rho)):
    // with W = sqrt(rho) and A = W yy W*, the usual W rho_tilde W equals A A^dag.
    // Reading them off an SVD avoids taking square roots of near-zero
    // eigenvalues, which would amplify roundoff to ~sqrt(eps).
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rho_solver(rho);
    if (rho_solver.info() != Eigen::Success) {
        throw NumericalError("concurrence eigendecomposition failed");
    }
    Eigen::Vector4d d = rho_solver.eigenvalues();
    // eigenvalues below the noise floor are exact zeros of a rank-deficient
    // rho; rooting their roundoff would inject sqrt(eps)-scale error
    const double floor = d.maxCoeff() * 1e-12;
    for (int i = 0; i < 4; ++i) {
        d(i) = d(i) > floor ? std::sqrt(d(i)) : 0.0;
    }
    const Eigen::Matrix4cd sqrt_rho = rho_solver.eigenvectors() *
                                      d.asDiagonal().toDenseMatrix().cast<Complex>() *
                                      rho_solver.eigenvectors().adjoint();
    const Eigen::Matrix4cd A = sqrt_rho * yy * sqrt_rho.conjugate();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(A);
    const Eigen::Vector4d& lambdas = svd.singularValues(); // descending
    return std::max(0.0, lambdas(0) - lambdas(1) - lambdas(2) - lambdas(3));
}

} // namespace spinstar
