#include <cmath>
#include <random>

#include "doctest.h"

#include "spinstar/closedform.hpp"
#include "spinstar/entanglement.hpp"
#include "spinstar/oracle.hpp"

using namespace spinstar;

TEST_CASE("pairwise concurrence") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(concurrence_pair(inv_sqrt2, inv_sqrt2) == doctest::Approx(1.0));
    CHECK(concurrence_pair(Complex(0.3, 0.4), 0.0) == 0.0);
    for (int M : {3, 5, 8}) {
        const double amp = 1.0 / std::sqrt(double(M));
        CHECK(concurrence_pair(amp, amp) == doctest::Approx(2.0 / M));
    }
    // phases do not matter
    CHECK(concurrence_pair(Complex(0.0, 0.5), Complex(-0.5, 0.0)) ==
          doctest::Approx(0.5));
}

TEST_CASE("snapshot of simple states") {
    SUBCASE("excitation on the center is a product state") {
        const EntanglementSnapshot snap = entanglement_snapshot(center_excitation(5));
        CHECK(snap.E_B == 0.0);
        CHECK(snap.E_BC == 0.0);
        CHECK(snap.script_E_B == doctest::Approx(0.0));
        CHECK(snap.script_E_BC == doctest::Approx(0.0));
    }
    SUBCASE("uniform W state saturates the bath bound") {
        const EntanglementSnapshot snap = entanglement_snapshot(uniform_bath(3));
        CHECK(snap.script_E_B == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(snap.E_B == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(snap.concurrences_bath(0, 1) == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("half-weight center maximizes the center measure") {
        Eigen::VectorXcd b(2);
        b << Complex(0.5, 0.0), Complex(0.0, 0.5);
        const AmplitudeState state(b, Complex(1.0 / std::sqrt(2.0), 0.0));
        const EntanglementSnapshot snap = entanglement_snapshot(state);
        CHECK(snap.script_E_BC == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("snapshot rejects unnormalized states, raw variant does not") {
    Eigen::VectorXcd b(2);
    b << Complex(0.5, 0.0), Complex(0.5, 0.0);
    const AmplitudeState state(b, 0.0); // norm^2 = 0.5
    CHECK_THROWS_AS(entanglement_snapshot(state), ContractError);
    CHECK_NOTHROW(entanglement_snapshot_raw(state));
}

TEST_CASE("script_E_BC depends only on |b_C|") {
    const Complex bC(0.3, 0.4);
    const double base = script_e_bath_center(bC);
    // conjugation and sign flips change the phase without touching a bit of
    // the magnitude: invariance must be exact
    CHECK(script_e_bath_center(std::conj(bC)) == base);
    CHECK(script_e_bath_center(-bC) == base);
    CHECK(script_e_bath_center(Complex(bC.imag(), bC.real())) == base);
    // generic rotations perturb |b_C| by at most an ulp
    for (double phi : {0.1, 1.0, 2.9}) {
        CHECK(script_e_bath_center(bC * std::exp(Complex(0.0, phi))) ==
              doctest::Approx(base).epsilon(1e-14));
    }
}

TEST_CASE("collective and per-amplitude script_E_B agree") {
    std::mt19937 gen(5150);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int M = 2 + int(gen() % 8);
        Eigen::VectorXcd b(M);
        for (int j = 0; j < M; ++j) b(j) = Complex(uni(gen), uni(gen));
        AmplitudeState state(b, Complex(uni(gen), uni(gen)));
        state = state.normalized();
        const EntanglementSnapshot snap = entanglement_snapshot(state);
        CHECK(snap.script_E_B ==
              doctest::Approx(script_e_bath(state.bath_sum(), state.b_center))
                  .epsilon(1e-12));
    }
}

TEST_CASE("center-start bath entanglement follows the collective closed form") {
    // script_E_B(t) = 4 M (M-1) gamma^2 sin^2(Omega t / 2) / Omega^2, derived
    // by substituting the propagators into the collective measure.
    const SpinStarSystem system =
        build_topology({Topology::nearest_neighbor, 1.0, 0.0}, 6, 1.3);
    const double omega = collective_frequency(system);
    const auto times = linspace(0.0, 12.0, 121);
    const EvolutionResult run =
        evolve_exact(build_subspace_hamiltonian(system, 1),
                     embed_single_excitation(center_excitation(6)), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const EntanglementSnapshot snap =
            entanglement_snapshot(run.amplitude_state(i).normalized(), times[i]);
        const double u = std::sin(0.5 * omega * times[i]);
        const double expected =
            4.0 * 6.0 * 5.0 * 1.3 * 1.3 * u * u / (omega * omega);
        CHECK(snap.script_E_B == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("bound margins") {
    SUBCASE("random runs keep both margins non-negative") {
        std::mt19937 gen(99);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            const int M = 3 + int(gen() % 6);
            const SpinStarSystem system = build_topology(
                {trial % 2 ? Topology::uniform_pairwise : Topology::nearest_neighbor,
                 std::abs(uni(gen)) + 0.2, 0.0},
                M, 1.0);
            Eigen::VectorXcd b(M);
            for (int j = 0; j < M; ++j) b(j) = Complex(uni(gen), uni(gen));
            AmplitudeState init(b, Complex(uni(gen), uni(gen)));
            init = init.normalized();
            const EvolutionResult run =
                evolve_exact(build_subspace_hamiltonian(system, 1),
                             embed_single_excitation(init), linspace(0.0, 20.0, 101));
            const BoundReport report = verify_bounds(run);
            CHECK(report.min_margin_bath >= -1e-10);
            CHECK(report.min_margin_center >= -1e-10);
            CHECK(report.ok());
        }
    }
    SUBCASE("common-phase amplitudes pin E_B to its bound") {
        const SpinStarSystem system =
            build_topology({Topology::uniform_pairwise, 0.8, 0.0}, 5, 1.0);
        const EvolutionResult run = evolve_exact(
            build_subspace_hamiltonian(system, 1),
            embed_single_excitation(center_excitation(5)), linspace(0.0, 20.0, 101));
        const BoundReport report = verify_bounds(run);
        for (double margin : report.margin_bath) {
            CHECK(std::abs(margin) <= 1e-10);
        }
    }
    SUBCASE("random phases open a strict gap") {
        Eigen::VectorXcd b(4);
        b << Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(-0.35, 0.35),
            Complex(0.3, -0.4);
        AmplitudeState state(b, 0.0);
        state = state.normalized();
        const EntanglementSnapshot snap = entanglement_snapshot(state);
        CHECK(snap.E_B - snap.script_E_B > 1e-3);
    }
}

TEST_CASE("reduced two-qubit density matrices") {
    // single-excitation state: rho has the X form with an empty |11> level
    Eigen::VectorXcd b(3);
    b << Complex(0.6, 0.0), Complex(0.0, 0.5), Complex(0.3, -0.2);
    AmplitudeState state(b, Complex(0.2, 0.3));
    state = state.normalized();
    const Eigen::VectorXcd psi = embed_in_full_space(state);

    const Eigen::Matrix4cd rho = two_qubit_reduced_density(psi, 3, 0, 1);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK(std::abs(rho(3, 3)) < 1e-14); // no double excitation
    CHECK(std::abs(rho(2, 1) - state.b(0) * std::conj(state.b(1))) < 1e-12);
    CHECK(std::abs(rho(2, 2) - std::norm(state.b(0))) < 1e-12);
    CHECK(std::abs(rho(1, 1) - std::norm(state.b(1))) < 1e-12);

    // center pair: qubit index M plays the second slot
    const Eigen::Matrix4cd rho_c = two_qubit_reduced_density(psi, 3, 0, 3);
    CHECK(std::abs(rho_c(2, 1) - state.b(0) * std::conj(state.b_center)) < 1e-12);

    CHECK_THROWS_AS(two_qubit_reduced_density(psi, 3, 0, 0), ValidationError);
    CHECK_THROWS_AS(two_qubit_reduced_density(psi, 3, 0, 4), ValidationError);
}

TEST_CASE("Wootters concurrence on known states") {
    SUBCASE("product state") {
        Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
        rho(0, 0) = 1.0; // |00><00|
        CHECK(wootters_concurrence(rho) == doctest::Approx(0.0));
    }
    SUBCASE("Bell state") {
        Eigen::Vector4cd bell;
        bell << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
        const Eigen::Matrix4cd rho = bell * bell.adjoint();
        CHECK(wootters_concurrence(rho) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("Werner family: C = max(0, (3p - 1) / 2)") {
        Eigen::Vector4cd bell;
        bell << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
        const Eigen::Matrix4cd pure = bell * bell.adjoint();
        for (double p : {0.1, 0.2, 0.4, 0.8, 1.0}) {
            const Eigen::Matrix4cd rho =
                p * pure + (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
            const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
            CHECK(wootters_concurrence(rho) ==
                  doctest::Approx(expected).epsilon(1e-10));
        }
    }
    SUBCASE("agrees with the shortcut on a random single-excitation state") {
        Eigen::VectorXcd b(4);
        b << Complex(0.1, 0.5), Complex(-0.4, 0.2), Complex(0.3, 0.3),
            Complex(0.2, -0.1);
        AmplitudeState state(b, Complex(0.35, 0.15));
        state = state.normalized();
        const Eigen::VectorXcd psi = embed_in_full_space(state);
        for (int a = 0; a < 4; ++a) {
            for (int c = a + 1; c <= 4; ++c) {
                const Complex amp_a = state.b(a);
                const Complex amp_c = c == 4 ? state.b_center : state.b(c);
                CHECK(wootters_concurrence(two_qubit_reduced_density(psi, 4, a, c)) ==
                      doctest::Approx(concurrence_pair(amp_a, amp_c))
                          .epsilon(1e-11));
            }
        }
    }
}
