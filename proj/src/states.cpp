#include "weakmeas/states.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace weakmeas {

namespace {

std::size_t read_max_dim_env() {
    const char* env = std::getenv("WEAKMEAS_MAX_DIM");
    if (env == nullptr) return 4096;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || v == 0) return 4096;
    return static_cast<std::size_t>(v);
}

double norm_of(const std::vector<Complex>& amps) {
    double s = 0.0;
    for (const Complex& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

} // namespace

std::size_t max_total_dimension() {
    static const std::size_t cap = read_max_dim_env();
    return cap;
}

bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

double QubitState::norm() const {
    return std::sqrt(std::norm(alpha) + std::norm(beta));
}

bool QubitState::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

QubitState QubitState::normalized(Complex a, Complex b) {
    if (!is_finite(a) || !is_finite(b))
        throw ValidationError("qubit amplitudes must be finite");
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n == 0.0) throw ValidationError("cannot normalize the zero qubit state");
    return QubitState{a / n, b / n};
}

double FockPointerState::norm() const { return norm_of(amps); }

bool FockPointerState::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

FockPointerState FockPointerState::normalized(std::vector<Complex> amps) {
    if (amps.empty()) throw ValidationError("pointer state needs at least one level");
    for (const Complex& a : amps)
        if (!is_finite(a)) throw ValidationError("pointer amplitudes must be finite");
    double n = norm_of(amps);
    if (n == 0.0) throw ValidationError("cannot normalize the zero pointer state");
    for (Complex& a : amps) a /= n;
    return FockPointerState{std::move(amps)};
}

FockPointerState FockPointerState::from_components(
    const std::vector<std::pair<int, Complex>>& components, int n_max) {
    if (n_max < 0) throw ValidationError("n_max must be nonnegative");
    std::vector<Complex> amps(static_cast<std::size_t>(n_max) + 1, Complex{0.0, 0.0});
    for (const auto& [n, c] : components) {
        if (n < 0 || n > n_max) {
            std::ostringstream msg;
            msg << "pointer component n = " << n << " outside [0, " << n_max << "]";
            throw ValidationError(msg.str());
        }
        amps[static_cast<std::size_t>(n)] += c;
    }
    return normalized(std::move(amps));
}

double FockPointerState::top_level_population() const {
    return std::norm(amps.back());
}

JointState::JointState(std::vector<int> dims_, std::vector<Complex> amps_)
    : dims(std::move(dims_)), amps(std::move(amps_)) {
    std::size_t expected = 1;
    for (int d : dims) {
        if (d <= 0) throw ValidationError("subsystem dimensions must be positive");
        expected *= static_cast<std::size_t>(d);
    }
    if (expected != amps.size())
        throw ValidationError("amplitude vector length does not match dims product");
    if (expected > max_total_dimension()) {
        std::ostringstream msg;
        msg << "state dimension " << expected << " exceeds cap "
            << max_total_dimension() << " (override with WEAKMEAS_MAX_DIM)";
        throw CapacityError(msg.str());
    }
}

std::size_t JointState::flat_index(const std::vector<int>& indices) const {
    if (indices.size() != dims.size())
        throw ValidationError("index rank does not match subsystem count");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (indices[k] < 0 || indices[k] >= dims[k])
            throw ValidationError("subsystem index out of range");
        flat = flat * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(indices[k]);
    }
    return flat;
}

double JointState::norm() const { return norm_of(amps); }

bool JointState::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

void JointState::normalize() {
    double n = norm();
    if (n == 0.0) throw ValidationError("cannot normalize the zero state");
    for (Complex& a : amps) a /= n;
}

void JointState::require_normalized(const char* what, double tol) const {
    for (const Complex& a : amps)
        if (!is_finite(a)) {
            std::ostringstream msg;
            msg << what << ": non-finite amplitude";
            throw ValidationError(msg.str());
        }
    if (!is_normalized(tol)) {
        std::ostringstream msg;
        msg << what << ": state is not normalized (norm = " << norm() << ")";
        throw ValidationError(msg.str());
    }
}

JointState JointState::from_qubit(const QubitState& q) {
    return JointState({2}, {q.alpha, q.beta});
}

JointState JointState::from_pointer(const FockPointerState& phi) {
    return JointState({phi.n_max() + 1}, phi.amps);
}

JointState JointState::basis_vector(std::vector<int> dims,
                                    const std::vector<int>& indices) {
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    JointState s(std::move(dims), std::vector<Complex>(total, Complex{0.0, 0.0}));
    s.amps[s.flat_index(indices)] = Complex{1.0, 0.0};
    return s;
}

JointState tensor_product(const JointState& a, const JointState& b) {
    std::size_t total = a.total_dim() * b.total_dim();
    if (total > max_total_dimension()) {
        std::ostringstream msg;
        msg << "tensor product dimension " << total << " exceeds cap "
            << max_total_dimension() << " (override with WEAKMEAS_MAX_DIM)";
        throw CapacityError(msg.str());
    }
    std::vector<int> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    std::vector<Complex> amps(total);
    const std::size_t nb = b.total_dim();
    for (std::size_t i = 0; i < a.total_dim(); ++i)
        for (std::size_t j = 0; j < nb; ++j)
            amps[i * nb + j] = a.amps[i] * b.amps[j];
    return JointState(std::move(dims), std::move(amps));
}

Complex inner_product(const JointState& a, const JointState& b) {
    if (a.total_dim() != b.total_dim())
        throw ValidationError("inner product of states with different dimensions");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.amps.size(); ++i)
        s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

} // namespace weakmeas
