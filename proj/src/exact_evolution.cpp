#include "weakmeas/exact_evolution.hpp"

#include <cmath>
#include <sstream>

namespace weakmeas {

namespace {

void require_pointer_index(const JointState& psi_f, int m, const char* what) {
    if (psi_f.dims.size() != 2 || psi_f.dims[0] != 2) {
        std::ostringstream msg;
        msg << what << ": expected a (qubit, pointer) joint state";
        throw ValidationError(msg.str());
    }
    if (m < 0 || m >= psi_f.dims[1]) {
        std::ostringstream msg;
        msg << what << ": Fock index " << m << " outside [0, " << psi_f.dims[1] - 1 << "]";
        throw ValidationError(msg.str());
    }
}

} // namespace

double BranchAmplitudes::total_weight() const {
    return std::norm(on_ground) + std::norm(on_excited);
}

BranchAmplitudes branch_amplitudes(const QubitState& s0, double g, int n) {
    if (n < 0) throw ValidationError("branch_amplitudes: n must be >= 0");
    const double angle = g * static_cast<double>(n);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Complex i{0.0, 1.0};
    return BranchAmplitudes{s0.alpha * c - i * s0.beta * s,
                            s0.beta * c - i * s0.alpha * s, n, g};
}

double branch_weight_closed_form(const QubitState& s0, double g, int n,
                                 bool ground) {
    const double angle = g * static_cast<double>(n);
    const double c2 = std::cos(angle) * std::cos(angle);
    const double s2 = std::sin(angle) * std::sin(angle);
    const double cross =
        std::sin(2.0 * angle) * std::imag(std::conj(s0.alpha) * s0.beta);
    const double pa = std::norm(s0.alpha);
    const double pb = std::norm(s0.beta);
    return ground ? pa * c2 + pb * s2 + cross : pb * c2 + pa * s2 - cross;
}

JointState evolve_exact(const QubitState& s0, const FockPointerState& phi0,
                        double g) {
    if (!s0.is_normalized())
        throw ValidationError("evolve_exact: qubit state is not normalized");
    if (!phi0.is_normalized())
        throw ValidationError("evolve_exact: pointer state is not normalized");

    const int levels = phi0.n_max() + 1;
    std::vector<Complex> amps(static_cast<std::size_t>(2) * levels);
    for (int n = 0; n < levels; ++n) {
        BranchAmplitudes eta = branch_amplitudes(s0, g, n);
        const Complex c_n = phi0.amps[static_cast<std::size_t>(n)];
        amps[static_cast<std::size_t>(n)] = c_n * eta.on_ground;           // (|g>, n)
        amps[static_cast<std::size_t>(levels + n)] = c_n * eta.on_excited; // (|e>, n)
    }
    return JointState({2, levels}, std::move(amps));
}

double fock_probability(const JointState& psi_f, int m) {
    require_pointer_index(psi_f, m, "fock_probability");
    const int levels = psi_f.dims[1];
    return std::norm(psi_f.amps[static_cast<std::size_t>(m)]) +
           std::norm(psi_f.amps[static_cast<std::size_t>(levels + m)]);
}

double conditional_probability(const JointState& psi_f, int m,
                               QubitOutcome outcome) {
    require_pointer_index(psi_f, m, "conditional_probability");
    const int levels = psi_f.dims[1];
    const std::size_t offset = outcome == QubitOutcome::g
                                   ? 0
                                   : static_cast<std::size_t>(levels);
    return std::norm(psi_f.amps[offset + static_cast<std::size_t>(m)]);
}

double conditional_fraction(const JointState& psi_f, int m,
                            QubitOutcome outcome) {
    const double total = fock_probability(psi_f, m);
    if (total <= 0.0)
        throw PostSelectionError(
            "conditional_fraction: pointer sub-ensemble has zero weight");
    return conditional_probability(psi_f, m, outcome) / total;
}

double pointer_state_probability(const JointState& psi_f,
                                 const FockPointerState& chi) {
    if (psi_f.dims.size() != 2 || psi_f.dims[0] != 2)
        throw ValidationError(
            "pointer_state_probability: expected a (qubit, pointer) joint state");
    if (chi.n_max() + 1 != psi_f.dims[1])
        throw ValidationError("pointer_state_probability: pointer size mismatch");
    if (!chi.is_normalized())
        throw ValidationError("pointer_state_probability: chi is not normalized");

    const int levels = psi_f.dims[1];
    Complex on_g{0.0, 0.0}, on_e{0.0, 0.0};
    for (int n = 0; n < levels; ++n) {
        const Complex d = std::conj(chi.amps[static_cast<std::size_t>(n)]);
        on_g += d * psi_f.amps[static_cast<std::size_t>(n)];
        on_e += d * psi_f.amps[static_cast<std::size_t>(levels + n)];
    }
    return std::norm(on_g) + std::norm(on_e);
}

} // namespace weakmeas
