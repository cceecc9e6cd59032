#pragma once

#include "weakmeas/states.hpp"

namespace weakmeas {

/// Per-Fock-level qubit amplitudes after evolving under g0 * a^dag a * sigma_x
/// for g = g0 t: the coupling rotates the qubit by an angle g*n conditioned on
/// the occupation n, with no photon exchange.
struct BranchAmplitudes {
    Complex on_ground;  // alpha cos(g n) - i beta sin(g n)
    Complex on_excited; // beta  cos(g n) - i alpha sin(g n)
    int n;
    double g;

    /// |on_ground|^2 + |on_excited|^2, exactly 1 for a normalized qubit.
    double total_weight() const;
};

BranchAmplitudes branch_amplitudes(const QubitState& s0, double g, int n);

/// Closed-form |on_ground|^2 (or |on_excited|^2), as
/// |alpha|^2 cos^2(gn) + |beta|^2 sin^2(gn) + sin(2gn) Im(alpha* beta).
double branch_weight_closed_form(const QubitState& s0, double g, int n,
                                 bool ground);

/// Exact, approximation-free evolution of |S0>|phi0> under the
/// number-conserving coupling: returns the joint state with amplitudes
/// c_n * eta on the (qubit, Fock) layout {2, n_max + 1}. O(n_max) work.
JointState evolve_exact(const QubitState& s0, const FockPointerState& phi0,
                        double g);

enum class QubitOutcome { g, e };

/// Unconditional probability of finding the pointer at Fock index m:
/// sum over qubit outcomes, equal to |c_m|^2 for every g (the occupation is
/// conserved, so the unconditional pointer statistics carry no signal).
double fock_probability(const JointState& psi_f, int m);

/// Joint probability of (pointer = m, qubit = outcome): I_m * |eta|^2.
double conditional_probability(const JointState& psi_f, int m,
                               QubitOutcome outcome);

/// The same, renormalized within the pointer-m sub-ensemble: |eta|^2.
/// Throws PostSelectionError when the sub-ensemble has zero weight.
double conditional_fraction(const JointState& psi_f, int m,
                            QubitOutcome outcome);

/// Probability of finding the pointer in an arbitrary (normalized) state chi
/// of the truncated ladder, summed over qubit outcomes. For chi = |m> this is
/// fock_probability; for superposition states it exposes the O(g^2) remainder
/// that the Fock-diagonal readout cancels exactly.
double pointer_state_probability(const JointState& psi_f,
                                 const FockPointerState& chi);

} // namespace weakmeas
