#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "spinstar/model.hpp"

namespace spinstar {

// ---------------------------- Hamiltonians ---------------------------------

// Dense Hamiltonian restricted to a fixed-excitation sector. The basis is
// ordered center-ground block first (bath configurations with N excitations,
// ascending bitmask), then the center-excited block (bath configurations
// with N-1 excitations, ascending bitmask). Labels use bits 0..M-1 for the
// outer qubits and bit M for the center.
struct SubspaceHamiltonian {
    int M{0};
    int N{0};
    bool dissipative{false};
    Eigen::MatrixXcd matrix;
    std::vector<std::uint64_t> basis_labels;

    Eigen::Index dim() const { return matrix.rows(); }
    bool hermitian() const;
};

// Matrix elements: gamma between a center-excited configuration and each
// bath configuration one center<->bath hop away; J_jk between bath
// configurations differing by one j<->k hop. The dissipative variant adds
// -i Gamma (bath excitation count) - i kappa (center excitation) on the
// diagonal.
SubspaceHamiltonian build_subspace_hamiltonian(const SpinStarSystem& system, int N,
                                               bool dissipative = false);

// Full 2^(M+1) tensor-product Hamiltonian (guard-railed to M <= 10).
Eigen::MatrixXcd build_full_space_hamiltonian(const SpinStarSystem& system,
                                              bool dissipative = false);

// ------------------------------ evolution ----------------------------------

enum class StateSpace { sector, full };

struct EvolutionResult {
    StateSpace space{StateSpace::sector};
    int M{0};
    int N{0};
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    std::vector<double> norms; // recorded as evolved, never renormalized

    // View of sample i as single-excitation amplitudes. Only valid for
    // sector results with N == 1.
    AmplitudeState amplitude_state(std::size_t i) const;
};

// Exact evolution of psi0 over the (ascending) time grid. Hermitian
// Hamiltonians go through one eigendecomposition and are sampled exactly at
// every time; non-Hermitian ones use a scaling-and-squaring matrix
// exponential per grid step (cached per distinct step size).
EvolutionResult evolve_exact(const SubspaceHamiltonian& H,
                             const Eigen::VectorXcd& psi0,
                             const std::vector<double>& times);

EvolutionResult evolve_full_space(const SpinStarSystem& system,
                                  const Eigen::VectorXcd& psi0,
                                  const std::vector<double>& times,
                                  bool dissipative = false);

// Population per total-excitation sector (size M + 2) of a full-space state.
std::vector<double> sector_populations(const Eigen::VectorXcd& psi, int M);

// ----------------------------- diagnostics ---------------------------------

// For each sample of an N-excitation sector run on a symmetric system:
// 1 - (norm of the projection onto the span of the two symmetrized Dicke
// combinations {bath-N x center-ground, bath-(N-1) x center-excited}),
// states normalized first. Zero means the two collective variables close the
// dynamics at that instant.
std::vector<double> collective_residual(const SpinStarSystem& system,
                                        const EvolutionResult& result,
                                        double tolerance = kDefaultSymmetryTolerance);

// N = M sector duality: the all-excited bath configuration plays the central
// role and single-hole configurations play the outer qubits. Returns the
// permutation p with p[i] = the single-excitation basis index (q_0..q_{M-1},
// center last) equivalent to sector basis index i. Requires N == M.
std::vector<int> hole_dual_permutation(const SubspaceHamiltonian& H);

// ------------------------------ embedding ----------------------------------

// Single-excitation amplitudes -> sector basis vector [b_0..b_{M-1}, b_C].
Eigen::VectorXcd embed_single_excitation(const AmplitudeState& state);

// Single-excitation amplitudes -> full 2^(M+1) state vector.
Eigen::VectorXcd embed_in_full_space(const AmplitudeState& state);

// n evenly spaced samples covering [a, b] (n >= 2).
std::vector<double> linspace(double a, double b, int n);

std::uint64_t binomial(int n, int k);

} // namespace spinstar
