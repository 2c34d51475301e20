#include "spinstar/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace spinstar {

namespace {

constexpr Complex kI{0.0, 1.0};

using Mask = std::uint64_t;

// Bath bitmasks with `count` bits set among the low M bits, ascending.
std::vector<Mask> masks_with_popcount(int M, int count) {
    std::vector<Mask> masks;
    if (count < 0 || count > M) return masks;
    if (count == 0) {
        masks.push_back(0);
        return masks;
    }
    // Gosper's hack walks the masks in ascending order.
    Mask mask = (Mask(1) << count) - 1;
    const Mask limit = Mask(1) << M;
    while (mask < limit) {
        masks.push_back(mask);
        const Mask c = mask & (~mask + 1);
        const Mask r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return masks;
}

int index_of(const std::vector<Mask>& masks, Mask mask) {
    const auto it = std::lower_bound(masks.begin(), masks.end(), mask);
    return static_cast<int>(it - masks.begin());
}

void validate_times(const std::vector<double>& times) {
    if (times.empty()) {
        throw ValidationError("time grid must not be empty");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) {
            throw ValidationError("time grid contains a non-finite value");
        }
        if (i > 0 && times[i] < times[i - 1]) {
            throw ValidationError("time grid must be sorted ascending");
        }
    }
}

void validate_state(const Eigen::VectorXcd& psi0, Eigen::Index dim) {
    if (psi0.size() != dim) {
        throw ValidationError("initial state dimension mismatch");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-8) {
        throw ContractError("initial state must be normalized");
    }
}

EvolutionResult evolve_matrix(const Eigen::MatrixXcd& H, bool hermitian,
                              const Eigen::VectorXcd& psi0,
                              const std::vector<double>& times) {
    EvolutionResult result;
    result.times = times;
    result.states.reserve(times.size());
    result.norms.reserve(times.size());

    if (hermitian) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eigendecomposition failed");
        }
        const Eigen::MatrixXcd& U = solver.eigenvectors();
        const Eigen::VectorXd& evals = solver.eigenvalues();
        const Eigen::VectorXcd coeffs = U.adjoint() * psi0;
        for (double t : times) {
            Eigen::VectorXcd phased(coeffs.size());
            for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
                phased(k) = std::exp(-kI * evals(k) * t) * coeffs(k);
            }
            result.states.push_back(U * phased);
            result.norms.push_back(result.states.back().norm());
        }
    } else {
        // Step-by-step propagation with exp(-i H dt), cached per step size.
        std::map<double, Eigen::MatrixXcd> step_cache;
        Eigen::VectorXcd psi = psi0;
        double t_prev = 0.0;
        for (double t : times) {
            const double dt = t - t_prev;
            if (dt != 0.0) {
                auto it = step_cache.find(dt);
                if (it == step_cache.end()) {
                    const Eigen::MatrixXcd generator = -kI * dt * H;
                    Eigen::MatrixXcd step = generator.exp();
                    if (!step.allFinite()) {
                        throw NumericalError("matrix exponential produced "
                                             "non-finite entries");
                    }
                    it = step_cache.emplace(dt, std::move(step)).first;
                }
                psi = it->second * psi;
            }
            t_prev = t;
            result.states.push_back(psi);
            result.norms.push_back(psi.norm());
        }
    }
    return result;
}

} // namespace

bool SubspaceHamiltonian::hermitian() const {
    return !dissipative || matrix.diagonal().imag().isZero(0.0);
}

SubspaceHamiltonian build_subspace_hamiltonian(const SpinStarSystem& system, int N,
                                               bool dissipative) {
    const int M = system.M;
    if (N < 0 || N > M) {
        throw ValidationError("excitation number N must satisfy 0 <= N <= M");
    }

    const auto ground_masks = masks_with_popcount(M, N);
    const auto excited_masks = masks_with_popcount(M, N - 1);
    const int n_ground = static_cast<int>(ground_masks.size());
    const int n_excited = static_cast<int>(excited_masks.size());
    const int dim = n_ground + n_excited;

    SubspaceHamiltonian H;
    H.M = M;
    H.N = N;
    H.dissipative = dissipative;
    H.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    H.basis_labels.reserve(dim);
    const Mask center_bit = Mask(1) << M;
    for (auto m : ground_masks) H.basis_labels.push_back(m);
    for (auto m : excited_masks) H.basis_labels.push_back(m | center_bit);

    const Eigen::MatrixXd& J = system.couplings;

    auto add_bath_hops = [&](const std::vector<Mask>& masks, int offset) {
        for (int i = 0; i < static_cast<int>(masks.size()); ++i) {
            const Mask mask = masks[i];
            for (int j = 0; j < M; ++j) {
                if (!(mask & (Mask(1) << j))) continue;
                for (int k = 0; k < M; ++k) {
                    if (mask & (Mask(1) << k)) continue;
                    const double Jjk = J(j, k);
                    if (Jjk == 0.0) continue;
                    const Mask target = mask ^ (Mask(1) << j) ^ (Mask(1) << k);
                    H.matrix(offset + index_of(masks, target), offset + i) = Jjk;
                }
            }
        }
    };
    add_bath_hops(ground_masks, 0);
    add_bath_hops(excited_masks, n_ground);

    // Center <-> bath hops: |S, 0_C> couples to |S \ {j}, 1_C> with gamma.
    for (int i = 0; i < n_ground; ++i) {
        const Mask mask = ground_masks[i];
        for (int j = 0; j < M; ++j) {
            if (!(mask & (Mask(1) << j))) continue;
            const int target =
                n_ground + index_of(excited_masks, mask ^ (Mask(1) << j));
            H.matrix(target, i) = system.gamma;
            H.matrix(i, target) = system.gamma;
        }
    }

    if (dissipative) {
        for (int i = 0; i < n_ground; ++i) {
            H.matrix(i, i) = -kI * (system.Gamma * double(N));
        }
        for (int i = 0; i < n_excited; ++i) {
            H.matrix(n_ground + i, n_ground + i) =
                -kI * (system.Gamma * double(N - 1) + system.kappa);
        }
    }
    return H;
}

Eigen::MatrixXcd build_full_space_hamiltonian(const SpinStarSystem& system,
                                              bool dissipative) {
    const int M = system.M;
    if (M > 10) {
        throw ValidationError("full-space evolution is guarded to M <= 10");
    }
    const std::uint32_t center_bit = 1u << M;
    const Eigen::Index dim = Eigen::Index(1) << (M + 1);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    const Eigen::MatrixXd& J = system.couplings;

    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s) {
        for (int j = 0; j < M; ++j) {
            const bool bj = s & (1u << j);
            // bath-bath hops, each unordered pair once per direction
            for (int k = j + 1; k < M; ++k) {
                if (J(j, k) == 0.0) continue;
                const bool bk = s & (1u << k);
                if (bj != bk) {
                    H(s ^ (1u << j) ^ (1u << k), s) = J(j, k);
                }
            }
            // center-bath hop
            const bool bc = s & center_bit;
            if (bj != bc && system.gamma != 0.0) {
                H(s ^ (1u << j) ^ center_bit, s) = system.gamma;
            }
        }
        if (dissipative) {
            const int bath_exc = std::popcount(s & (center_bit - 1u));
            const int center_exc = (s & center_bit) ? 1 : 0;
            H(s, s) = -kI * (system.Gamma * bath_exc + system.kappa * center_exc);
        }
    }
    return H;
}

AmplitudeState EvolutionResult::amplitude_state(std::size_t i) const {
    if (space != StateSpace::sector || N != 1) {
        throw ContractError("amplitude_state requires a single-excitation "
                            "sector result");
    }
    const Eigen::VectorXcd& psi = states.at(i);
    return AmplitudeState(psi.head(M), psi(M));
}

EvolutionResult evolve_exact(const SubspaceHamiltonian& H,
                             const Eigen::VectorXcd& psi0,
                             const std::vector<double>& times) {
    validate_times(times);
    validate_state(psi0, H.dim());
    EvolutionResult result = evolve_matrix(H.matrix, H.hermitian(), psi0, times);
    result.space = StateSpace::sector;
    result.M = H.M;
    result.N = H.N;
    return result;
}

EvolutionResult evolve_full_space(const SpinStarSystem& system,
                                  const Eigen::VectorXcd& psi0,
                                  const std::vector<double>& times,
                                  bool dissipative) {
    validate_times(times);
    const Eigen::MatrixXcd H = build_full_space_hamiltonian(system, dissipative);
    validate_state(psi0, H.rows());
    const bool hermitian = !dissipative || (system.Gamma == 0.0 && system.kappa == 0.0);
    EvolutionResult result = evolve_matrix(H, hermitian, psi0, times);
    result.space = StateSpace::full;
    result.M = system.M;
    result.N = -1;
    return result;
}

std::vector<double> sector_populations(const Eigen::VectorXcd& psi, int M) {
    const Eigen::Index dim = Eigen::Index(1) << (M + 1);
    if (psi.size() != dim) {
        throw ValidationError("state dimension does not match M");
    }
    std::vector<double> pops(M + 2, 0.0);
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s) {
        pops[std::popcount(s)] += std::norm(psi(s));
    }
    return pops;
}

std::vector<double> collective_residual(const SpinStarSystem& system,
                                        const EvolutionResult& result,
                                        double tolerance) {
    if (result.space != StateSpace::sector) {
        throw ValidationError("collective_residual needs a sector result");
    }
    collective_coupling(system, tolerance); // refuses asymmetric systems

    const int n_ground = static_cast<int>(binomial(result.M, result.N));
    std::vector<double> residuals;
    residuals.reserve(result.states.size());
    for (const auto& psi : result.states) {
        const double nsq = psi.squaredNorm();
        // Uniform (Dicke) combination per block: |<v|psi>|^2 reduces to
        // |sum of block amplitudes|^2 / block size.
        const Complex s_ground = psi.head(n_ground).sum();
        double proj = std::norm(s_ground) / double(n_ground);
        const Eigen::Index n_excited = psi.size() - n_ground;
        if (n_excited > 0) {
            const Complex s_excited = psi.tail(n_excited).sum();
            proj += std::norm(s_excited) / double(n_excited);
        }
        residuals.push_back(1.0 - proj / nsq);
    }
    return residuals;
}

std::vector<int> hole_dual_permutation(const SubspaceHamiltonian& H) {
    if (H.N != H.M) {
        throw ValidationError("hole duality requires an N == M sector");
    }
    const Mask center_bit = Mask(1) << H.M;
    const Mask full_bath = center_bit - 1;
    std::vector<int> perm(H.basis_labels.size(), -1);
    for (std::size_t i = 0; i < H.basis_labels.size(); ++i) {
        const Mask label = H.basis_labels[i];
        if (!(label & center_bit)) {
            perm[i] = H.M; // all-excited bath plays the center
        } else {
            const Mask hole = full_bath & ~label;
            perm[i] = std::countr_zero(hole); // hole at qubit j plays q_j
        }
    }
    return perm;
}

Eigen::VectorXcd embed_single_excitation(const AmplitudeState& state) {
    Eigen::VectorXcd psi(state.M() + 1);
    psi.head(state.M()) = state.b;
    psi(state.M()) = state.b_center;
    return psi;
}

Eigen::VectorXcd embed_in_full_space(const AmplitudeState& state) {
    const int M = state.M();
    const Eigen::Index dim = Eigen::Index(1) << (M + 1);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (int j = 0; j < M; ++j) {
        psi(1u << j) = state.b(j);
    }
    psi(Eigen::Index(1) << M) = state.b_center;
    return psi;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) {
        throw ValidationError("linspace needs at least 2 samples");
    }
    std::vector<double> out(n);
    const double step = (b - a) / double(n - 1);
    for (int i = 0; i < n; ++i) {
        out[i] = a + step * i;
    }
    out.back() = b;
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * std::uint64_t(n - k + i) / std::uint64_t(i);
    }
    return result;
}

} // namespace spinstar
