#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinstar/errors.hpp"

namespace spinstar {

using Complex = std::complex<double>;

// ------------------------------- system ------------------------------------

// A spin-star network: M outer qubits, each coupled to one central qubit with
// strength gamma, plus a symmetric intra-bath coupling matrix J (zero
// diagonal). Gamma and kappa are the outer and central decay rates used by
// the conditional (no-jump) dynamics. Units: hbar = 1, couplings and rates in
// the same frequency unit, times in its inverse.
struct SpinStarSystem {
    int M{0};
    double gamma{0.0};
    Eigen::MatrixXd couplings; // M x M, symmetric, zero diagonal
    double Gamma{0.0};
    double kappa{0.0};

    SpinStarSystem() = default;
    SpinStarSystem(int M_, double gamma_, Eigen::MatrixXd couplings_,
                   double Gamma_ = 0.0, double kappa_ = 0.0);

    bool dissipative() const { return Gamma > 0.0 || kappa > 0.0; }

    // Row sum of the coupling matrix for outer qubit j (0-based).
    double row_sum(int j) const;
};

enum class Topology { nearest_neighbor, uniform_pairwise, dipole_ring };

std::string to_string(Topology kind);
Topology topology_from_string(const std::string& name);

// Parameters of a standard topology. `radius` only matters for dipole_ring,
// where the M qubits sit equally spaced on a circle of that radius and
// J_jk = J / r_jk^3 with r_jk the chord distance.
struct TopologySpec {
    Topology kind{Topology::uniform_pairwise};
    double J{1.0};
    double radius{0.5};
};

// Coupling matrix of a standard topology (always exactly symmetric).
Eigen::MatrixXd build_coupling_matrix(const TopologySpec& spec, int M);

// Convenience: coupling matrix plus star parameters in one call.
SpinStarSystem build_topology(const TopologySpec& spec, int M, double gamma = 1.0,
                              double Gamma = 0.0, double kappa = 0.0);

// ----------------------------- symmetry ------------------------------------

// Per-qubit collective couplings Delta_j = sum_k J_jk and their spread. The
// closed-form machinery requires all Delta_j equal; `delta` is their common
// value and is meaningful only when `is_symmetric`.
struct SymmetryReport {
    Eigen::VectorXd delta_per_qubit;
    double delta{0.0};
    bool is_symmetric{false};
    double max_relative_spread{0.0};
    double tolerance{0.0};

    std::string describe() const;
};

inline constexpr double kDefaultSymmetryTolerance = 1e-9;

// is_symmetric iff max_j |Delta_j - mean| <= tolerance * max(1, |mean|).
SymmetryReport check_symmetry(const SpinStarSystem& system,
                              double tolerance = kDefaultSymmetryTolerance);

// Thrown when an operation that needs the collective symmetry is handed an
// asymmetric system; carries the offending report.
class SymmetryError : public Error {
public:
    SymmetryError(std::string message, SymmetryReport report);
    const SymmetryReport& report() const { return report_; }

private:
    SymmetryReport report_;
};

// Common Delta of a symmetric system; throws SymmetryError otherwise.
double collective_coupling(const SpinStarSystem& system,
                           double tolerance = kDefaultSymmetryTolerance);

// Omega = sqrt(4 M gamma^2 + Delta^2), the frequency that sets the period of
// every closed-form observable. Throws SymmetryError for asymmetric systems.
double collective_frequency(const SpinStarSystem& system,
                            double tolerance = kDefaultSymmetryTolerance);
double collective_frequency(int M, double gamma, double delta);

// ------------------------------- states ------------------------------------

// Amplitudes of a single-excitation state: b[j] multiplies the state with
// outer qubit j excited, b_center the state with the central qubit excited.
struct AmplitudeState {
    Eigen::VectorXcd b;
    Complex b_center{0.0, 0.0};

    AmplitudeState() = default;
    AmplitudeState(Eigen::VectorXcd bath, Complex center)
        : b(std::move(bath)), b_center(center) {}

    int M() const { return static_cast<int>(b.size()); }
    Complex bath_sum() const { return b.sum(); } // B = sum_j b_j
    double norm_sq() const { return b.squaredNorm() + std::norm(b_center); }
    double norm() const { return std::sqrt(norm_sq()); }

    AmplitudeState normalized() const;
};

// Excitation on the central qubit: b_C = 1, all bath amplitudes zero.
AmplitudeState center_excitation(int M);

// Uniform bath state b_j = e^{i phase}/sqrt(M), b_C = 0 (a W state).
AmplitudeState uniform_bath(int M, double phase = 0.0);

} // namespace spinstar
