#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinstar/model.hpp"
#include "spinstar/oracle.hpp"

namespace spinstar {

// Pairwise concurrence of two single-excitation amplitudes: 2 |b_j b_k^*|.
double concurrence_pair(Complex bj, Complex bk);

// |-1 + |B|^2 + |b_C|^2| : collective intra-bath entanglement measure.
double script_e_bath(Complex B, Complex b_C);

// 4 |b_C|^2 (1 - |b_C|^2) : collective bath-center entanglement measure.
double script_e_bath_center(Complex b_C);

// All pairwise concurrences plus the aggregate and collective measures at one
// instant. The collective measures lower-bound the sums: script_E_B <= E_B
// and script_E_BC <= E_BC for normalized single-excitation states.
struct EntanglementSnapshot {
    double t{0.0};
    Eigen::MatrixXd concurrences_bath;   // symmetric, zero diagonal: C_jk
    Eigen::VectorXd concurrences_center; // C_jC
    double E_B{0.0};                     // sum over bath pairs j < k
    double E_BC{0.0};                    // sum over center pairs
    double script_E_B{0.0};
    double script_E_BC{0.0};
};

// Requires |norm^2 - 1| <= 1e-8; conditional states must be normalized
// first. snapshot_raw skips the check (raw-norm diagnostics only).
EntanglementSnapshot entanglement_snapshot(const AmplitudeState& state, double t = 0.0);
EntanglementSnapshot entanglement_snapshot_raw(const AmplitudeState& state, double t = 0.0);

// Per-sample inequality margins (E_B - script_E_B) and (E_BC - script_E_BC)
// for a single-excitation run; states are normalized before each snapshot.
struct BoundReport {
    std::vector<double> times;
    std::vector<double> margin_bath;
    std::vector<double> margin_center;
    double min_margin_bath{0.0};
    double min_margin_center{0.0};

    bool ok(double tol = 1e-10) const {
        return min_margin_bath >= -tol && min_margin_center >= -tol;
    }
};

BoundReport verify_bounds(const EvolutionResult& result);

// ----------------- general-concurrence validation route ---------------------
// Independent of the 2|b_j b_k^*| shortcut: reduced two-qubit density matrix
// from a full-space pure state, and the spin-flip concurrence of an arbitrary
// two-qubit density matrix.

// qubit indices 0..M-1 are outer qubits, M is the center. Basis order of the
// result: |q_a q_b> -> index 2 a + b.
Eigen::Matrix4cd two_qubit_reduced_density(const Eigen::VectorXcd& full_state,
                                           int M, int qubit_a, int qubit_b);

double wootters_concurrence(const Eigen::Matrix4cd& rho);

} // namespace spinstar
