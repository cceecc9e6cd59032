#include "weakmeas/weak_values.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace weakmeas {

namespace {

constexpr double kOrthogonalTol = 1e-14;

void require_qubit_normalized(const QubitState& s, const char* what) {
    if (!s.is_normalized())
        throw ValidationError(std::string(what) + ": qubit state is not normalized");
}

void require_qubit_operator(const DenseOperator& a, const char* what) {
    if (a.dim() != 2)
        throw ValidationError(std::string(what) + ": observable must be 2x2");
}

} // namespace

CouplingSpec CouplingSpec::from_rate_and_duration(double g0, double t) {
    double g = g0 * t;
    if (!(g >= 0.0))
        throw ValidationError("coupling g = g0*t must be nonnegative and finite");
    return CouplingSpec{g0, t, g};
}

CouplingSpec CouplingSpec::from_dimensionless(double g) {
    if (!(g >= 0.0))
        throw ValidationError("coupling g must be nonnegative and finite");
    return CouplingSpec{g, 1.0, g};
}

Complex qubit_expectation(const DenseOperator& a, const QubitState& s0) {
    require_qubit_operator(a, "qubit_expectation");
    Complex a_on_g = a.at(0, 0) * s0.alpha + a.at(0, 1) * s0.beta;
    Complex a_on_e = a.at(1, 0) * s0.alpha + a.at(1, 1) * s0.beta;
    return std::conj(s0.alpha) * a_on_g + std::conj(s0.beta) * a_on_e;
}

WeakValueResult weak_value(const DenseOperator& a, const QubitState& s0,
                           const QubitState& sf) {
    require_qubit_operator(a, "weak_value");
    require_qubit_normalized(s0, "weak_value");
    require_qubit_normalized(sf, "weak_value");

    Complex overlap = std::conj(sf.alpha) * s0.alpha + std::conj(sf.beta) * s0.beta;
    Complex numer = std::conj(sf.alpha) * (a.at(0, 0) * s0.alpha + a.at(0, 1) * s0.beta) +
                    std::conj(sf.beta) * (a.at(1, 0) * s0.alpha + a.at(1, 1) * s0.beta);
    if (std::abs(overlap) < kOrthogonalTol) {
        std::ostringstream msg;
        msg << "weak value undefined: |<sf|s0>| = " << std::abs(overlap)
            << " below " << kOrthogonalTol;
        throw PostSelectionError(msg.str());
    }
    return WeakValueResult{numer / overlap, overlap, std::norm(overlap)};
}

PointerWeakValue pointer_weak_value(const FockPointerState& phi0, int m) {
    if (m < 0 || m > phi0.n_max())
        throw ValidationError("pointer_weak_value: m outside the Fock ladder");
    Complex c_m = phi0.amps[static_cast<std::size_t>(m)];
    if (std::abs(c_m) <= kOrthogonalTol)
        throw PostSelectionError(
            "pointer weak value undefined: c_m vanishes at the requested index");
    // <m|a^dag a|phi0> / <m|phi0> = m c_m / c_m: exact, no cancellation error.
    return PointerWeakValue{Complex{static_cast<double>(m), 0.0}, m};
}

IntensityReport intensity_first_order(const QubitState& s0,
                                      const FockPointerState& phi0,
                                      const DenseOperator& a, double g, int m) {
    require_qubit_operator(a, "intensity_first_order");
    require_qubit_normalized(s0, "intensity_first_order");
    if (!phi0.is_normalized())
        throw ValidationError("intensity_first_order: pointer state is not normalized");
    if (m < 0 || m > phi0.n_max())
        throw ValidationError("intensity_first_order: m outside the Fock ladder");
    if (g * phi0.n_max() > 0.3)
        std::cerr << "weakmeas: warning: g*n_max = " << g * phi0.n_max()
                  << " > 0.3, first-order intensities are unreliable\n";

    const double i0 = std::norm(phi0.amps[static_cast<std::size_t>(m)]);
    const double p_w = static_cast<double>(m);

    // Post-selected splits on {|g>,|e>} for a general observable: the O(g)
    // term of |<q| (1 - i g P_w A) |S0>|^2.
    Complex a_on_g = a.at(0, 0) * s0.alpha + a.at(0, 1) * s0.beta;
    Complex a_on_e = a.at(1, 0) * s0.alpha + a.at(1, 1) * s0.beta;
    double signal_g = 2.0 * g * p_w * std::imag(std::conj(s0.alpha) * a_on_g);
    double signal_e = 2.0 * g * p_w * std::imag(std::conj(s0.beta) * a_on_e);

    IntensityReport report;
    report.i0 = i0;
    report.i_s = i0 * (std::norm(s0.alpha) + signal_g);
    report.i_comp = i0 * (std::norm(s0.beta) + signal_e);
    report.i_g = i0 * signal_g;
    report.order = IntensityOrder::first_order;
    return report;
}

IntensityReport postselected_intensity_first_order(const QubitState& s0,
                                                   Complex c_m, double g,
                                                   int m) {
    require_qubit_normalized(s0, "postselected_intensity_first_order");
    if (m < 0)
        throw ValidationError("postselected_intensity_first_order: m must be >= 0");

    const double i0 = std::norm(c_m);
    const double im_ab = std::imag(std::conj(s0.alpha) * s0.beta);
    const double signal = 2.0 * g * static_cast<double>(m) * im_ab;

    IntensityReport report;
    report.i0 = i0;
    report.i_s = i0 * (std::norm(s0.alpha) + signal);
    report.i_comp = i0 * (std::norm(s0.beta) - signal);
    report.i_g = i0 * signal;
    report.order = IntensityOrder::first_order;
    return report;
}

RealityCheck reality_condition_check(const DenseOperator& a,
                                     const QubitState& s0, Complex p_w) {
    require_qubit_operator(a, "reality_condition_check");
    require_qubit_normalized(s0, "reality_condition_check");
    double residual = std::imag(p_w * qubit_expectation(a, s0));
    return RealityCheck{std::abs(residual) <= 1e-12, residual};
}

double unconditional_intensity_first_order(double i0, Complex p_w,
                                           Complex expectation_a, double g) {
    return i0 * (1.0 + 2.0 * g * std::imag(p_w * expectation_a));
}

} // namespace weakmeas
