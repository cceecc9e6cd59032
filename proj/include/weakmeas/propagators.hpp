#pragma once

#include <functional>

#include "weakmeas/operators.hpp"
#include "weakmeas/states.hpp"

namespace weakmeas {

/// exp(-i H t) |psi> for a constant hermitian H (hbar = 1), computed by full
/// eigendecomposition. This is the reference propagator the analytic engines
/// are tested against. Throws ValidationError when H is not hermitian within
/// tolerance or the dimensions disagree; norm is preserved to ~1e-14.
JointState expm_propagate(const DenseOperator& hamiltonian, double t,
                          const JointState& psi);

using TimeDependentGenerator = std::function<DenseOperator(double)>;

/// Time-ordered propagation of i d|psi>/dt = H(t)|psi> from t0 to t1 with a
/// fixed number of macro-steps of the fourth-order commutator-free scheme:
/// per step, H is sampled at the two Gauss-Legendre nodes and two partial-step
/// exponentials are applied (via kernels::expmv),
///   |psi> <- exp(-i h (a1 H1 + a2 H2)) exp(-i h (a2 H1 + a1 H2)) |psi>,
/// a1 = 1/4 - sqrt(3)/6, a2 = 1/4 + sqrt(3)/6. Halving h cuts the error by
/// ~16x on smooth generators. Every sampled H is hermiticity-checked.
JointState timeordered_propagate(const TimeDependentGenerator& h_of_t,
                                 double t0, double t1, const JointState& psi,
                                 int steps);

/// Same scheme, but additionally reports the state at every macro-step
/// boundary through `on_sample(t, psi_t)`. Used for along-the-pulse
/// diagnostics (e.g. worst-case infidelity against an effective model).
JointState timeordered_propagate_sampled(
    const TimeDependentGenerator& h_of_t, double t0, double t1,
    const JointState& psi, int steps,
    const std::function<void(double, const JointState&)>& on_sample);

} // namespace weakmeas
