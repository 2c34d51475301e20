#include "spinstar/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace spinstar {

namespace {

void validate_couplings(int M, const Eigen::MatrixXd& J) {
    if (J.rows() != M || J.cols() != M) {
        throw ValidationError("coupling matrix must be M x M");
    }
    for (int j = 0; j < M; ++j) {
        if (J(j, j) != 0.0) {
            throw ValidationError("coupling matrix must have zero diagonal");
        }
        for (int k = j + 1; k < M; ++k) {
            const double scale = std::max({1.0, std::abs(J(j, k)), std::abs(J(k, j))});
            if (std::abs(J(j, k) - J(k, j)) > 1e-12 * scale) {
                throw ValidationError("coupling matrix must be symmetric");
            }
        }
    }
}

} // namespace

SpinStarSystem::SpinStarSystem(int M_, double gamma_, Eigen::MatrixXd couplings_,
                               double Gamma_, double kappa_)
    : M(M_), gamma(gamma_), couplings(std::move(couplings_)), Gamma(Gamma_), kappa(kappa_) {
    if (M < 1) {
        throw ValidationError("invalid size: M must be >= 1");
    }
    if (gamma < 0.0) {
        throw ValidationError("gamma must be >= 0");
    }
    if (Gamma < 0.0 || kappa < 0.0) {
        throw ValidationError("decay rates must be >= 0");
    }
    validate_couplings(M, couplings);
}

double SpinStarSystem::row_sum(int j) const {
    return couplings.row(j).sum();
}

std::string to_string(Topology kind) {
    switch (kind) {
        case Topology::nearest_neighbor: return "nearest_neighbor";
        case Topology::uniform_pairwise: return "uniform_pairwise";
        case Topology::dipole_ring: return "dipole_ring";
    }
    return "unknown";
}

Topology topology_from_string(const std::string& name) {
    if (name == "nearest_neighbor") return Topology::nearest_neighbor;
    if (name == "uniform_pairwise") return Topology::uniform_pairwise;
    if (name == "dipole_ring") return Topology::dipole_ring;
    throw ValidationError("unknown topology kind: " + name);
}

Eigen::MatrixXd build_coupling_matrix(const TopologySpec& spec, int M) {
    if (M < 1) {
        throw ValidationError("invalid size: M must be >= 1");
    }
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(M, M);
    if (M < 2) {
        return J; // no intra-ring pairs
    }
    switch (spec.kind) {
        case Topology::uniform_pairwise:
            for (int j = 0; j < M; ++j) {
                for (int k = j + 1; k < M; ++k) {
                    J(j, k) = J(k, j) = spec.J;
                }
            }
            break;
        case Topology::nearest_neighbor:
            // Ring adjacency; for M = 2 the two qubits share a single bond.
            for (int j = 0; j < M; ++j) {
                const int k = (j + 1) % M;
                if (j == k) continue;
                J(j, k) = J(k, j) = spec.J;
            }
            break;
        case Topology::dipole_ring: {
            if (!(spec.radius > 0.0)) {
                throw ValidationError("invalid geometry: dipole_ring radius must be > 0");
            }
            // Explicit coordinates on the circle; r_jk is the chord length
            // 2 R sin(pi |j-k| / M).
            std::vector<double> x(M), y(M);
            for (int j = 0; j < M; ++j) {
                const double theta = 2.0 * std::numbers::pi * j / M;
                x[j] = spec.radius * std::cos(theta);
                y[j] = spec.radius * std::sin(theta);
            }
            for (int j = 0; j < M; ++j) {
                for (int k = j + 1; k < M; ++k) {
                    const double r = std::hypot(x[j] - x[k], y[j] - y[k]);
                    J(j, k) = J(k, j) = spec.J / (r * r * r);
                }
            }
            break;
        }
    }
    return J;
}

SpinStarSystem build_topology(const TopologySpec& spec, int M, double gamma,
                              double Gamma, double kappa) {
    return SpinStarSystem(M, gamma, build_coupling_matrix(spec, M), Gamma, kappa);
}

std::string SymmetryReport::describe() const {
    std::ostringstream os;
    os << "Delta_j = [";
    for (Eigen::Index j = 0; j < delta_per_qubit.size(); ++j) {
        if (j) os << ", ";
        os << delta_per_qubit(j);
    }
    os << "], max relative spread " << max_relative_spread
       << " (tolerance " << tolerance << ")";
    return os.str();
}

SymmetryReport check_symmetry(const SpinStarSystem& system, double tolerance) {
    if (!(tolerance > 0.0)) {
        throw ValidationError("symmetry tolerance must be > 0");
    }
    SymmetryReport report;
    report.tolerance = tolerance;
    report.delta_per_qubit.resize(system.M);
    for (int j = 0; j < system.M; ++j) {
        report.delta_per_qubit(j) = system.row_sum(j);
    }
    const double mean = report.delta_per_qubit.mean();
    const double max_dev =
        (report.delta_per_qubit.array() - mean).abs().maxCoeff();
    report.max_relative_spread = max_dev / std::max(1.0, std::abs(mean));
    report.is_symmetric = report.max_relative_spread <= tolerance;
    if (report.is_symmetric) {
        report.delta = mean;
    }
    return report;
}

SymmetryError::SymmetryError(std::string message, SymmetryReport report)
    : Error(message + ": " + report.describe()), report_(std::move(report)) {}

double collective_coupling(const SpinStarSystem& system, double tolerance) {
    SymmetryReport report = check_symmetry(system, tolerance);
    if (!report.is_symmetric) {
        throw SymmetryError("collective symmetry violated", std::move(report));
    }
    return report.delta;
}

double collective_frequency(int M, double gamma, double delta) {
    return std::sqrt(4.0 * M * gamma * gamma + delta * delta);
}

double collective_frequency(const SpinStarSystem& system, double tolerance) {
    return collective_frequency(system.M, system.gamma,
                                collective_coupling(system, tolerance));
}

AmplitudeState AmplitudeState::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) {
        throw ContractError("cannot normalize a zero-norm state");
    }
    return AmplitudeState(b / n, b_center / n);
}

AmplitudeState center_excitation(int M) {
    return AmplitudeState(Eigen::VectorXcd::Zero(M), Complex(1.0, 0.0));
}

AmplitudeState uniform_bath(int M, double phase) {
    if (M < 1) {
        throw ValidationError("invalid size: M must be >= 1");
    }
    const Complex amp = std::exp(Complex(0.0, phase)) / std::sqrt(double(M));
    return AmplitudeState(Eigen::VectorXcd::Constant(M, amp), Complex(0.0, 0.0));
}

} // namespace spinstar
