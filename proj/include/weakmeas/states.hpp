#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "weakmeas/errors.hpp"

namespace weakmeas {

using Complex = std::complex<double>;

/// Tolerance used when a state is required to be normalized.
inline constexpr double kNormTol = 1e-12;

/// Default cap on the total dimension of any composite space. Can be raised
/// through the WEAKMEAS_MAX_DIM environment variable (read once per process).
std::size_t max_total_dimension();

bool is_finite(Complex z);

/// Two-level state a|g> + b|e| on the fixed basis order |g> = 0, |e> = 1.
struct QubitState {
    Complex alpha; // coefficient of |g>
    Complex beta;  // coefficient of |e>

    double norm() const;
    bool is_normalized(double tol = kNormTol) const;

    /// Builds the state and rescales it to unit norm. Throws ValidationError
    /// on the zero vector or non-finite input.
    static QubitState normalized(Complex a, Complex b);
};

/// Bosonic mode amplitudes c_0..c_{n_max} on a truncated Fock ladder.
/// Index equals occupation number.
struct FockPointerState {
    std::vector<Complex> amps;

    int n_max() const { return static_cast<int>(amps.size()) - 1; }
    double norm() const;
    bool is_normalized(double tol = kNormTol) const;

    static FockPointerState normalized(std::vector<Complex> amps);
    /// Sparse constructor: (n, amplitude) components on a ladder of size
    /// n_max + 1, rescaled to unit norm.
    static FockPointerState from_components(
        const std::vector<std::pair<int, Complex>>& components, int n_max);

    /// |amps[n_max]|^2 — population at the cutoff, used for truncation checks.
    double top_level_population() const;
};

/// Dense state on a composite space. The layout is row-major in the subsystem
/// order: the FIRST subsystem varies slowest, i.e. for dims {d0, d1, d2}
///   flat(i0, i1, i2) = (i0 * d1 + i1) * d2 + i2.
struct JointState {
    std::vector<int> dims;
    std::vector<Complex> amps;

    JointState() = default;
    JointState(std::vector<int> dims_, std::vector<Complex> amps_);

    std::size_t total_dim() const { return amps.size(); }
    std::size_t flat_index(const std::vector<int>& indices) const;

    double norm() const;
    bool is_normalized(double tol = kNormTol) const;
    void normalize();

    /// Throws ValidationError naming `what` if the norm is off or any
    /// amplitude is non-finite.
    void require_normalized(const char* what, double tol = kNormTol) const;

    static JointState from_qubit(const QubitState& q);
    static JointState from_pointer(const FockPointerState& phi);
    /// Single basis vector |indices> on the given dims.
    static JointState basis_vector(std::vector<int> dims,
                                   const std::vector<int>& indices);
};

/// Kronecker product of two states in the documented layout (`a` becomes the
/// slow/leading factor). Throws CapacityError when the combined dimension
/// exceeds max_total_dimension().
JointState tensor_product(const JointState& a, const JointState& b);

/// <a|b> with conjugation on the left argument.
Complex inner_product(const JointState& a, const JointState& b);

} // namespace weakmeas
