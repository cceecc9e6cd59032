#pragma once

#include "weakmeas/operators.hpp"
#include "weakmeas/states.hpp"

namespace weakmeas {

/// <sf|A|s0> / <sf|s0> together with the post-selection overlap it divides by.
struct WeakValueResult {
    Complex value;
    Complex overlap;     // <sf|s0>
    double overlap_prob; // |<sf|s0>|^2
};

struct PointerWeakValue {
    Complex value;
    int basis_index;
};

/// Coupling strength bookkeeping: the dimensionless g = g0 * t is what every
/// formula consumes.
struct CouplingSpec {
    double g0;
    double t;
    double g;

    static CouplingSpec from_rate_and_duration(double g0, double t);
    static CouplingSpec from_dimensionless(double g);
};

enum class IntensityOrder { first_order, exact };

/// Pointer-outcome probabilities for one Fock index m: the unconditional
/// baseline i0 = |c_m|^2 and its post-selected split on the fixed {|g>,|e>}
/// basis. First-order values are reported raw (they may leave [0,1] slightly
/// for large g; that is the approximation breaking down, not an error).
struct IntensityReport {
    double i0;     // unconditional baseline I_0 (= I_m)
    double i_s;    // post-selected on |g>
    double i_comp; // post-selected on |e> (complement sub-ensemble)
    double i_g;    // first-order signal term, i_s = i0*|alpha|^2 + i_g
    IntensityOrder order;

    double unconditional() const { return i_s + i_comp; }
};

Complex qubit_expectation(const DenseOperator& a, const QubitState& s0);

/// Weak value <sf|A|s0>/<sf|s0>. Throws PostSelectionError when the overlap
/// magnitude is below 1e-14 (orthogonal post-selection).
WeakValueResult weak_value(const DenseOperator& a, const QubitState& s0,
                           const QubitState& sf);

/// Pointer weak value for the number operator in the Fock basis,
/// <m|a^dag a|phi0>/<m|phi0> = m. Throws PostSelectionError when c_m = 0.
PointerWeakValue pointer_weak_value(const FockPointerState& phi0, int m);

/// First-order unconditional intensity and its {|g>,|e>} split for a general
/// qubit observable, with the Fock pointer weak value P_w = m. Warns (stderr)
/// when g * n_max > 0.3, where sin(x) ~ x is off by over a percent.
IntensityReport intensity_first_order(const QubitState& s0,
                                      const FockPointerState& phi0,
                                      const DenseOperator& a, double g, int m);

/// The sigma_x special case in closed form:
///   i_s    = |c_m|^2 (|alpha|^2 + 2 g m Im(alpha* beta))
///   i_comp = |c_m|^2 (|beta|^2  - 2 g m Im(alpha* beta))
/// whose sum is |c_m|^2 identically; the g-terms cancel in the total.
IntensityReport postselected_intensity_first_order(const QubitState& s0,
                                                   Complex c_m, double g,
                                                   int m);

struct RealityCheck {
    bool holds;      // |Im(P_w <A>)| <= 1e-12
    double residual; // signed Im(P_w <S0|A|S0>)
};

/// The first-order-invisibility condition: when P_w <S0|A|S0> is real, the
/// unconditional intensity carries no O(g) signal.
RealityCheck reality_condition_check(const DenseOperator& a,
                                     const QubitState& s0, Complex p_w);

/// Generic first-order unconditional intensity
///   i0 * [1 + 2 g Im(P_w <A>)]
/// for an arbitrary (possibly non-Fock) pointer weak value.
double unconditional_intensity_first_order(double i0, Complex p_w,
                                           Complex expectation_a, double g);

} // namespace weakmeas
