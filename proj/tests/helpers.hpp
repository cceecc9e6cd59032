#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "weakmeas/operators.hpp"
#include "weakmeas/propagators.hpp"
#include "weakmeas/sampling.hpp"
#include "weakmeas/states.hpp"

namespace testutil {

using weakmeas::Complex;

inline Complex random_amplitude(std::mt19937_64& rng) {
    return Complex{weakmeas::uniform53(rng) * 2.0 - 1.0,
                   weakmeas::uniform53(rng) * 2.0 - 1.0};
}

inline weakmeas::QubitState random_qubit(std::mt19937_64& rng) {
    return weakmeas::QubitState::normalized(random_amplitude(rng),
                                            random_amplitude(rng));
}

inline weakmeas::FockPointerState random_pointer(std::mt19937_64& rng,
                                                 int n_max) {
    std::vector<Complex> amps(static_cast<std::size_t>(n_max) + 1);
    for (Complex& a : amps) a = random_amplitude(rng);
    return weakmeas::FockPointerState::normalized(std::move(amps));
}

inline weakmeas::JointState random_joint(std::mt19937_64& rng,
                                         std::vector<int> dims) {
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    std::vector<Complex> amps(total);
    for (Complex& a : amps) a = random_amplitude(rng);
    weakmeas::JointState s(std::move(dims), std::move(amps));
    s.normalize();
    return s;
}

inline weakmeas::DenseOperator random_operator(std::mt19937_64& rng, int dim) {
    std::vector<Complex> entries(static_cast<std::size_t>(dim) * dim);
    for (Complex& z : entries) z = random_amplitude(rng);
    return weakmeas::DenseOperator(dim, std::move(entries));
}

inline weakmeas::DenseOperator random_hermitian(std::mt19937_64& rng, int dim) {
    weakmeas::DenseOperator raw = random_operator(rng, dim);
    weakmeas::DenseOperator h = raw;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            h.at(r, c) = 0.5 * (raw.at(r, c) + std::conj(raw.at(c, r)));
    return h;
}

inline double max_amp_diff(const weakmeas::JointState& a,
                           const weakmeas::JointState& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i)
        worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
    return worst;
}

/// Largest amplitude difference after removing one global phase (fixed by the
/// largest component of `a`).
inline double max_amp_diff_up_to_phase(const weakmeas::JointState& a,
                                       const weakmeas::JointState& b) {
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < a.amps.size(); ++i)
        if (std::abs(a.amps[i]) > std::abs(a.amps[pivot])) pivot = i;
    if (std::abs(a.amps[pivot]) == 0.0 || std::abs(b.amps[pivot]) == 0.0)
        return max_amp_diff(a, b);
    Complex phase = (a.amps[pivot] / std::abs(a.amps[pivot])) /
                    (b.amps[pivot] / std::abs(b.amps[pivot]));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i)
        worst = std::max(worst, std::abs(a.amps[i] - phase * b.amps[i]));
    return worst;
}

/// Least-squares slope of log(y) against log(x).
inline double fit_loglog_slope(const std::vector<double>& x,
                               const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Time-dependent detuned sideband generator on (two-level) x (ladder),
/// H(t) = omega (e^{i delta t} sigma_+ a + e^{-i delta t} sigma_- a^dag).
/// Used as the independent route against the analytic block solutions.
inline weakmeas::TimeDependentGenerator sideband_generator(double omega,
                                                           double delta,
                                                           int n_max) {
    auto coupling =
        weakmeas::op_tensor(weakmeas::raising(), weakmeas::annihilation(n_max));
    auto coupling_dag = coupling.adjoint();
    return [omega, delta, coupling, coupling_dag](double t) {
        Complex phase = omega * std::exp(Complex{0.0, delta * t});
        return phase * coupling + std::conj(phase) * coupling_dag;
    };
}

} // namespace testutil
