#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "weakmeas/exact_evolution.hpp"
#include "weakmeas/propagators.hpp"
#include "weakmeas/weak_values.hpp"

using namespace weakmeas;
using testutil::max_amp_diff;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const QubitState kCircular{Complex{kInvSqrt2, 0.0}, Complex{0.0, kInvSqrt2}};
} // namespace

TEST_SUITE_BEGIN("exact_evolution");

TEST_CASE("branch amplitudes at zero rotation angle are the inputs") {
    std::mt19937_64 rng(31);
    QubitState s0 = testutil::random_qubit(rng);
    BranchAmplitudes eta = branch_amplitudes(s0, 0.37, 0);
    CHECK(eta.on_ground == s0.alpha);
    CHECK(eta.on_excited == s0.beta);
}

TEST_CASE("branch amplitudes at a quarter rotation swap with -i") {
    std::mt19937_64 rng(32);
    QubitState s0 = testutil::random_qubit(rng);
    // g n = pi/2
    BranchAmplitudes eta = branch_amplitudes(s0, M_PI / 4.0, 2);
    CHECK(std::abs(eta.on_ground - Complex{0, -1} * s0.beta) < 1e-15);
    CHECK(std::abs(eta.on_excited - Complex{0, -1} * s0.alpha) < 1e-15);
}

TEST_CASE("branch amplitudes against the matrix-exponential route") {
    const QubitState s0{Complex{0.6, 0}, Complex{0.8, 0}};
    const double g = 0.3;
    const int n = 2;
    BranchAmplitudes eta = branch_amplitudes(s0, g, n);
    CHECK(std::abs(eta.on_ground -
                   Complex{0.6 * std::cos(0.6), -0.8 * std::sin(0.6)}) < 1e-15);
    CHECK(std::abs(eta.on_excited -
                   Complex{0.8 * std::cos(0.6), -0.6 * std::sin(0.6)}) < 1e-15);

    // independent route: exp(-i g sigma_x n) on the bare qubit
    JointState via_expm = expm_propagate(
        pauli_x(), g * n, JointState::from_qubit(s0));
    CHECK(std::abs(via_expm.amps[0] - eta.on_ground) < 1e-13);
    CHECK(std::abs(via_expm.amps[1] - eta.on_excited) < 1e-13);
}

TEST_CASE("branch weights are a resolution of unity") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 1000; ++trial) {
        QubitState s0 = testutil::random_qubit(rng);
        double g = weakmeas::uniform53(rng) * 3.0;
        int n = static_cast<int>(rng() % 20);
        BranchAmplitudes eta = branch_amplitudes(s0, g, n);
        CHECK(std::abs(eta.total_weight() - 1.0) <= 1e-14);
    }
}

TEST_CASE("closed-form branch weights match the amplitude moduli") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        QubitState s0 = testutil::random_qubit(rng);
        double g = weakmeas::uniform53(rng) * 2.0;
        int n = static_cast<int>(rng() % 8);
        BranchAmplitudes eta = branch_amplitudes(s0, g, n);
        CHECK(std::abs(branch_weight_closed_form(s0, g, n, true) -
                       std::norm(eta.on_ground)) <= 1e-14);
        CHECK(std::abs(branch_weight_closed_form(s0, g, n, false) -
                       std::norm(eta.on_excited)) <= 1e-14);
    }
}

TEST_CASE("evolve_exact at g = 0 is the product state") {
    std::mt19937_64 rng(35);
    QubitState s0 = testutil::random_qubit(rng);
    FockPointerState phi0 = testutil::random_pointer(rng, 5);
    JointState out = evolve_exact(s0, phi0, 0.0);
    JointState expected = tensor_product(JointState::from_qubit(s0),
                                         JointState::from_pointer(phi0));
    CHECK(max_amp_diff(out, expected) < 1e-15);
}

TEST_CASE("evolve_exact matches the dense matrix-exponential oracle") {
    std::mt19937_64 rng(36);
    const int n_max = 16;
    DenseOperator h = op_tensor(pauli_x(), number_operator(n_max));
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        QubitState s0 = testutil::random_qubit(rng);
        FockPointerState phi0 = testutil::random_pointer(rng, n_max);
        double g = weakmeas::uniform53(rng) * 1.5;
        JointState exact = evolve_exact(s0, phi0, g);
        JointState oracle = expm_propagate(
            h, g,
            tensor_product(JointState::from_qubit(s0), JointState::from_pointer(phi0)));
        worst = std::max(worst, max_amp_diff(exact, oracle));
        CHECK(std::abs(exact.norm() - 1.0) < 1e-14);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("Fock projections keep their initial weight") {
    std::mt19937_64 rng(37);
    FockPointerState phi0 = testutil::random_pointer(rng, 7);
    QubitState s0 = testutil::random_qubit(rng);
    JointState psi_f = evolve_exact(s0, phi0, 0.83);
    for (int m = 0; m <= 7; ++m)
        CHECK(std::abs(fock_probability(psi_f, m) -
                       std::norm(phi0.amps[static_cast<std::size_t>(m)])) <= 1e-14);
}

TEST_CASE("occupation statistics are independent of the coupling") {
    FockPointerState phi0 = FockPointerState::normalized(
        {Complex{0, 0}, Complex{1, 0}});
    std::mt19937_64 rng(38);
    QubitState s0 = testutil::random_qubit(rng);
    for (double g : {0.0, 0.3, 0.7, 2.0}) {
        JointState psi_f = evolve_exact(s0, phi0, g);
        CHECK(fock_probability(psi_f, 1) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(fock_probability(psi_f, 0) == doctest::Approx(0.0).epsilon(1e-14));
    }

    // equal superposition keeps its halves at any coupling
    FockPointerState half = FockPointerState::normalized(
        {Complex{kInvSqrt2, 0}, Complex{kInvSqrt2, 0}});
    JointState psi_f = evolve_exact(kCircular, half, 0.7);
    CHECK(fock_probability(psi_f, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fock_probability(psi_f, 1) == doctest::Approx(0.5).epsilon(1e-14));

    // and the full distribution sums to one
    std::mt19937_64 rng2(39);
    FockPointerState phi2 = testutil::random_pointer(rng2, 9);
    JointState psi2 = evolve_exact(kCircular, phi2, 1.3);
    double total = 0.0;
    for (int m = 0; m <= 9; ++m) total += fock_probability(psi2, m);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("conditional probability at the circular state") {
    FockPointerState phi0 = FockPointerState::normalized(
        {Complex{0.6, 0}, Complex{0.8, 0}});
    const double g = 0.01;
    JointState psi_f = evolve_exact(kCircular, phi0, g);
    const double i1 = 0.64;
    const double expected = i1 * (0.5 + std::sin(0.02) / 2.0); // 0.5099993...
    CHECK(conditional_probability(psi_f, 1, QubitOutcome::g) ==
          doctest::Approx(expected).epsilon(1e-13));

    // first-order value overshoots by 2 g^3 / 3 (the sin(2gm)/2 expansion)
    const double first = i1 * (0.5 + g);
    const double diff = first - conditional_probability(psi_f, 1, QubitOutcome::g);
    CHECK(diff == doctest::Approx(i1 * 2.0 * g * g * g / 3.0).epsilon(1e-3));
}

TEST_CASE("conditional outcomes sum to the Fock probability") {
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 50; ++trial) {
        QubitState s0 = testutil::random_qubit(rng);
        FockPointerState phi0 = testutil::random_pointer(rng, 6);
        double g = weakmeas::uniform53(rng) * 2.0;
        JointState psi_f = evolve_exact(s0, phi0, g);
        int m = static_cast<int>(rng() % 7);
        double joint_sum = conditional_probability(psi_f, m, QubitOutcome::g) +
                           conditional_probability(psi_f, m, QubitOutcome::e);
        CHECK(std::abs(joint_sum - fock_probability(psi_f, m)) <= 1e-15);
    }
}

TEST_CASE("conditional fractions renormalize within the sub-ensemble") {
    FockPointerState phi0 = FockPointerState::normalized(
        {Complex{0.6, 0}, Complex{0.8, 0}});
    JointState psi_f = evolve_exact(kCircular, phi0, 0.2);
    double frac_g = conditional_fraction(psi_f, 1, QubitOutcome::g);
    double frac_e = conditional_fraction(psi_f, 1, QubitOutcome::e);
    CHECK(frac_g + frac_e == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(frac_g == doctest::Approx(conditional_probability(psi_f, 1, QubitOutcome::g) /
                                    fock_probability(psi_f, 1))
                        .epsilon(1e-14));

    FockPointerState vacuum_only = FockPointerState::normalized({Complex{1, 0}, Complex{0, 0}});
    JointState psi2 = evolve_exact(kCircular, vacuum_only, 0.2);
    CHECK_THROWS_AS((void)conditional_fraction(psi2, 1, QubitOutcome::g),
                    PostSelectionError);
}

TEST_CASE("conditional probabilities are periodic in g with period pi/m") {
    std::mt19937_64 rng(41);
    QubitState s0 = testutil::random_qubit(rng);
    FockPointerState phi0 = testutil::random_pointer(rng, 4);
    for (int m : {1, 2, 3}) {
        const double period = M_PI / m;
        for (double g : {0.05, 0.4, 1.1}) {
            double base = conditional_probability(evolve_exact(s0, phi0, g), m,
                                                  QubitOutcome::g);
            for (int k = 1; k <= 2; ++k) {
                double shifted = conditional_probability(
                    evolve_exact(s0, phi0, g + k * period), m, QubitOutcome::g);
                CHECK(std::abs(shifted - base) < 1e-12);
            }
        }
    }
}

TEST_CASE("index range errors") {
    JointState psi_f = evolve_exact(kCircular,
                                    FockPointerState::normalized({Complex{1, 0}}), 0.0);
    CHECK_THROWS_AS((void)fock_probability(psi_f, 1), ValidationError);
    CHECK_THROWS_AS((void)fock_probability(psi_f, -1), ValidationError);
    CHECK_THROWS_AS((void)conditional_probability(psi_f, 1, QubitOutcome::g),
                    ValidationError);
}

TEST_SUITE_END();
