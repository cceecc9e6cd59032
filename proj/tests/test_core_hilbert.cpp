#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "weakmeas/exact_evolution.hpp"
#include "weakmeas/operators.hpp"
#include "weakmeas/propagators.hpp"
#include "weakmeas/states.hpp"

using namespace weakmeas;
using testutil::fit_loglog_slope;
using testutil::max_amp_diff;

TEST_SUITE_BEGIN("core_hilbert");

TEST_CASE("tensor product of basis vectors is a basis vector") {
    JointState g = JointState::from_qubit(QubitState{{1, 0}, {0, 0}});
    JointState vac = JointState::basis_vector({3}, {0});
    JointState joint = tensor_product(g, vac);
    REQUIRE(joint.total_dim() == 6);
    CHECK(joint.amps[0] == Complex{1, 0});
    for (std::size_t i = 1; i < 6; ++i) CHECK(joint.amps[i] == Complex{0, 0});
}

TEST_CASE("tensor product uses the qubit-major layout") {
    Complex a{0.6, 0.0}, b{0.0, 0.8};
    Complex c0{0.28, 0.0}, c1{0.0, 0.96};
    JointState q({2}, {a, b});
    JointState p({2}, {c0, c1});
    JointState joint = tensor_product(q, p);
    CHECK(std::abs(joint.amps[0] - a * c0) < 1e-15);
    CHECK(std::abs(joint.amps[1] - a * c1) < 1e-15);
    CHECK(std::abs(joint.amps[2] - b * c0) < 1e-15);
    CHECK(std::abs(joint.amps[3] - b * c1) < 1e-15);
    CHECK(joint.dims == std::vector<int>{2, 2});
}

TEST_CASE("tensor product norm is the product of norms") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        JointState a = testutil::random_joint(rng, {4});
        JointState b = testutil::random_joint(rng, {5});
        // scale away from unit norm to make the product law informative
        for (Complex& z : a.amps) z *= 1.7;
        for (Complex& z : b.amps) z *= 0.3;
        JointState ab = tensor_product(a, b);
        CHECK(std::abs(ab.norm() - a.norm() * b.norm()) < 1e-12);
    }
}

TEST_CASE("tensor product respects the dimension cap") {
    JointState big = JointState::basis_vector({100}, {0});
    JointState bigger = JointState::basis_vector({64}, {0});
    CHECK_THROWS_AS((void)tensor_product(tensor_product(big, big), bigger),
                    CapacityError);
}

TEST_CASE("layout round-trip recovers the factors of a product state") {
    std::mt19937_64 rng(303);
    JointState a = testutil::random_joint(rng, {3});
    JointState b = testutil::random_joint(rng, {4});
    JointState ab = tensor_product(a, b);

    // contract against factor a to recover b (up to global phase)
    std::vector<Complex> b_rec(4, Complex{0, 0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j)
            b_rec[static_cast<std::size_t>(j)] +=
                std::conj(a.amps[static_cast<std::size_t>(i)]) *
                ab.amps[static_cast<std::size_t>(i * 4 + j)];
    JointState b_state({4}, b_rec);
    CHECK(testutil::max_amp_diff_up_to_phase(b_state, b) < 1e-12);
}

TEST_CASE("op_tensor of identities is the identity") {
    DenseOperator i6 = op_tensor(DenseOperator::identity(2), DenseOperator::identity(3));
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            CHECK(i6.at(r, c) == (r == c ? Complex{1, 0} : Complex{0, 0}));
}

TEST_CASE("op_tensor acts factor-wise") {
    JointState g0 = tensor_product(JointState::from_qubit(QubitState{{1, 0}, {0, 0}}),
                                   JointState::basis_vector({3}, {0}));
    DenseOperator flip = op_tensor(pauli_x(), DenseOperator::identity(3));
    JointState e0 = flip.apply(g0);
    JointState expected = tensor_product(
        JointState::from_qubit(QubitState{{0, 0}, {1, 0}}),
        JointState::basis_vector({3}, {0}));
    CHECK(max_amp_diff(e0, expected) < 1e-15);
}

TEST_CASE("mixed-product law on random operator pairs") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        DenseOperator a = testutil::random_operator(rng, 2);
        DenseOperator b = testutil::random_operator(rng, 3);
        DenseOperator c = testutil::random_operator(rng, 2);
        DenseOperator d = testutil::random_operator(rng, 3);
        DenseOperator lhs = op_tensor(a, b) * op_tensor(c, d);
        DenseOperator rhs = op_tensor(a * c, b * d);
        double worst = 0.0;
        for (int r = 0; r < 6; ++r)
            for (int col = 0; col < 6; ++col)
                worst = std::max(worst, std::abs(lhs.at(r, col) - rhs.at(r, col)));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("hermitian flag is verified, not trusted") {
    CHECK_THROWS_AS(DenseOperator::hermitian(
                        2, {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}}),
                    ValidationError);
    CHECK_NOTHROW(DenseOperator::hermitian(
        2, {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}}));
    CHECK_THROWS_AS(DenseOperator::unitary(
                        2, {Complex{2, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}}),
                    ValidationError);
}

TEST_CASE("expm_propagate with H = 0 is the identity") {
    std::mt19937_64 rng(505);
    JointState psi = testutil::random_joint(rng, {2, 3});
    JointState out = expm_propagate(DenseOperator(6), 1.37, psi);
    CHECK(max_amp_diff(out, psi) < 1e-14);
}

TEST_CASE("expm_propagate reproduces the Pauli rotation") {
    JointState g = JointState::from_qubit(QubitState{{1, 0}, {0, 0}});
    JointState out = expm_propagate(pauli_x(), M_PI / 2.0, g);
    // |g> -> -i|e>
    CHECK(std::abs(out.amps[0]) < 1e-14);
    CHECK(std::abs(out.amps[1] - Complex{0, -1}) < 1e-14);
}

TEST_CASE("expm_propagate rejects non-hermitian generators") {
    JointState psi = JointState::from_qubit(QubitState{{1, 0}, {0, 0}});
    CHECK_THROWS_AS(
        (void)expm_propagate(
            DenseOperator(2, {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}}),
            1.0, psi),
        ValidationError);
}

TEST_CASE("expm_propagate agrees with the analytic number-conditioned rotation") {
    std::mt19937_64 rng(606);
    const int n_max = 6;
    DenseOperator h = op_tensor(pauli_x(), number_operator(n_max));
    // qubit-major layout wants sigma_x (x) N; evolve_exact uses (qubit, Fock)
    for (int trial = 0; trial < 5; ++trial) {
        QubitState s0 = testutil::random_qubit(rng);
        FockPointerState phi0 = testutil::random_pointer(rng, n_max);
        const double g0 = 0.31, t = 0.9;
        JointState via_expm = expm_propagate(
            h, g0 * t,
            tensor_product(JointState::from_qubit(s0), JointState::from_pointer(phi0)));
        JointState via_exact = evolve_exact(s0, phi0, g0 * t);
        CHECK(max_amp_diff(via_expm, via_exact) < 1e-12);
    }
}

TEST_CASE("propagators preserve the norm") {
    std::mt19937_64 rng(707);
    JointState psi = testutil::random_joint(rng, {2, 5});
    DenseOperator h = testutil::random_hermitian(rng, 10);
    JointState a = expm_propagate(h, 2.3, psi);
    CHECK(std::abs(a.norm() - psi.norm()) < 1e-10);

    auto h_of_t = testutil::sideband_generator(1.0, 5.0, 4);
    JointState psi2 = testutil::random_joint(rng, {2, 5});
    JointState b = timeordered_propagate(h_of_t, 0.0, 2.0, psi2, 400);
    CHECK(std::abs(b.norm() - psi2.norm()) < 1e-8);
}

TEST_CASE("timeordered_propagate reduces to expm for constant generators") {
    std::mt19937_64 rng(808);
    DenseOperator h = testutil::random_hermitian(rng, 6);
    JointState psi = testutil::random_joint(rng, {6});
    auto constant = [&](double) { return h; };
    JointState via_steps = timeordered_propagate(constant, 0.0, 0.8, psi, 64);
    JointState via_expm = expm_propagate(h, 0.8, psi);
    CHECK(max_amp_diff(via_steps, via_expm) < 1e-10);
}

TEST_CASE("timeordered_propagate matches the resonant sideband rotation") {
    // At delta = 0 the drive is static: |up, 0> rotates to -i|down, 1> after a
    // quarter period.
    const int n_max = 3;
    const double omega = 1.0;
    auto h_of_t = testutil::sideband_generator(omega, 0.0, n_max);
    JointState up0 = JointState::basis_vector({2, n_max + 1}, {1, 0});
    JointState out =
        timeordered_propagate(h_of_t, 0.0, M_PI / 2.0 / omega, up0, 200);
    JointState expected = JointState::basis_vector({2, n_max + 1}, {0, 1});
    for (Complex& z : expected.amps) z *= Complex{0, -1};
    CHECK(max_amp_diff(out, expected) < 1e-8);
}

TEST_CASE("timeordered_propagate converges at fourth order") {
    const int n_max = 4;
    auto h_of_t = testutil::sideband_generator(1.0, 7.0, n_max);
    std::mt19937_64 rng(909);
    JointState psi = testutil::random_joint(rng, {2, n_max + 1});

    JointState fine = timeordered_propagate(h_of_t, 0.0, 1.5, psi, 640);
    JointState mid = timeordered_propagate(h_of_t, 0.0, 1.5, psi, 160);
    JointState coarse = timeordered_propagate(h_of_t, 0.0, 1.5, psi, 80);
    double err_coarse = max_amp_diff(coarse, fine);
    double err_mid = max_amp_diff(mid, fine);
    double ratio = err_coarse / err_mid;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 40.0);
}

TEST_CASE("timeordered_propagate rejects non-hermitian samples") {
    DenseOperator bad(2, {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}});
    JointState psi = JointState::from_qubit(QubitState{{1, 0}, {0, 0}});
    auto h_of_t = [&](double) { return bad; };
    CHECK_THROWS_AS((void)timeordered_propagate(h_of_t, 0.0, 1.0, psi, 4),
                    ValidationError);
}

TEST_CASE("timeordered_propagate validates the time window and step count") {
    JointState psi = JointState::from_qubit(QubitState{{1, 0}, {0, 0}});
    auto h_of_t = [](double) { return DenseOperator::identity(2); };
    CHECK_THROWS_AS((void)timeordered_propagate(h_of_t, 1.0, 0.0, psi, 4),
                    ValidationError);
    CHECK_THROWS_AS((void)timeordered_propagate(h_of_t, 0.0, 1.0, psi, 0),
                    ValidationError);
}

TEST_SUITE_END();
