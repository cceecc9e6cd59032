#include "weakmeas/propagators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "weakmeas/kernels.hpp"

namespace weakmeas {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
// Gauss-Legendre nodes and exponent weights of the 4th-order two-exponential
// commutator-free scheme.
constexpr double kNode1 = 0.5 - kSqrt3 / 6.0;
constexpr double kNode2 = 0.5 + kSqrt3 / 6.0;
constexpr double kWeight1 = 0.25 - kSqrt3 / 6.0;
constexpr double kWeight2 = 0.25 + kSqrt3 / 6.0;

void require_hermitian(const DenseOperator& h, const char* what) {
    const double tol = 1e-12 * std::max(1.0, h.max_abs_entry());
    double defect = h.hermiticity_defect();
    if (defect > tol) {
        std::ostringstream msg;
        msg << what << ": generator is not hermitian (defect " << defect << ")";
        throw ValidationError(msg.str());
    }
}

} // namespace

JointState expm_propagate(const DenseOperator& hamiltonian, double t,
                          const JointState& psi) {
    const int dim = hamiltonian.dim();
    if (psi.total_dim() != static_cast<std::size_t>(dim))
        throw ValidationError("expm_propagate: operator/state dimension mismatch");
    require_hermitian(hamiltonian, "expm_propagate");

    Eigen::MatrixXcd h(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) h(r, c) = hamiltonian.at(r, c);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw ValidationError("expm_propagate: eigendecomposition failed");

    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = psi.amps[static_cast<std::size_t>(i)];

    Eigen::VectorXcd modes = solver.eigenvectors().adjoint() * v;
    for (int i = 0; i < dim; ++i)
        modes(i) *= std::exp(Complex{0.0, -solver.eigenvalues()(i) * t});
    Eigen::VectorXcd out = solver.eigenvectors() * modes;

    JointState result = psi;
    for (int i = 0; i < dim; ++i) result.amps[static_cast<std::size_t>(i)] = out(i);
    for (const Complex& a : result.amps)
        if (!is_finite(a))
            throw ValidationError("expm_propagate produced non-finite amplitudes");
    return result;
}

JointState timeordered_propagate_sampled(
    const TimeDependentGenerator& h_of_t, double t0, double t1,
    const JointState& psi, int steps,
    const std::function<void(double, const JointState&)>& on_sample) {
    if (t1 < t0)
        throw ValidationError("timeordered_propagate: t1 must be >= t0");
    if (steps < 1)
        throw ValidationError("timeordered_propagate: steps must be >= 1");

    const int dim = static_cast<int>(psi.total_dim());
    const double h = (t1 - t0) / steps;

    JointState state = psi;
    std::vector<Complex> scratch(state.amps.size());

    for (int k = 0; k < steps; ++k) {
        const double t = t0 + k * h;
        DenseOperator h1 = h_of_t(t + kNode1 * h);
        DenseOperator h2 = h_of_t(t + kNode2 * h);
        if (h1.dim() != dim || h2.dim() != dim)
            throw ValidationError("timeordered_propagate: generator dimension mismatch");
        require_hermitian(h1, "timeordered_propagate");
        require_hermitian(h2, "timeordered_propagate");

        // right factor: early node weighted kWeight2, applied first
        DenseOperator right = kWeight2 * h1 + kWeight1 * h2;
        DenseOperator left = kWeight1 * h1 + kWeight2 * h2;

        kernels::expmv(dim, right.entries().data(), Complex{0.0, -h},
                       state.amps.data(), scratch.data());
        kernels::expmv(dim, left.entries().data(), Complex{0.0, -h},
                       scratch.data(), state.amps.data());

        if (on_sample) on_sample(t + h, state);
    }

    for (const Complex& a : state.amps)
        if (!is_finite(a))
            throw ValidationError("timeordered_propagate produced non-finite amplitudes");
    return state;
}

JointState timeordered_propagate(const TimeDependentGenerator& h_of_t,
                                 double t0, double t1, const JointState& psi,
                                 int steps) {
    return timeordered_propagate_sampled(h_of_t, t0, t1, psi, steps, nullptr);
}

} // namespace weakmeas
