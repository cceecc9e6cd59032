#include "weakmeas/operators.hpp"

#include <cmath>
#include <sstream>

#include "weakmeas/kernels.hpp"

namespace weakmeas {

DenseOperator::DenseOperator(int dim)
    : dim_(dim), m_(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0}) {
    if (dim <= 0) throw ValidationError("operator dimension must be positive");
}

DenseOperator::DenseOperator(int dim, std::vector<Complex> entries)
    : dim_(dim), m_(std::move(entries)) {
    if (dim <= 0) throw ValidationError("operator dimension must be positive");
    if (m_.size() != static_cast<std::size_t>(dim) * dim)
        throw ValidationError("entry count does not match dim*dim");
    for (const Complex& z : m_)
        if (!is_finite(z)) throw ValidationError("operator entries must be finite");
}

DenseOperator DenseOperator::identity(int dim) {
    DenseOperator op(dim);
    for (int i = 0; i < dim; ++i) op.at(i, i) = Complex{1.0, 0.0};
    return op;
}

DenseOperator DenseOperator::hermitian(int dim, std::vector<Complex> entries,
                                       double tol) {
    DenseOperator op(dim, std::move(entries));
    double defect = op.hermiticity_defect();
    if (defect > tol) {
        std::ostringstream msg;
        msg << "matrix flagged hermitian has defect " << defect << " > " << tol;
        throw ValidationError(msg.str());
    }
    return op;
}

DenseOperator DenseOperator::unitary(int dim, std::vector<Complex> entries,
                                     double tol) {
    DenseOperator op(dim, std::move(entries));
    double defect = op.unitarity_defect();
    if (defect > tol) {
        std::ostringstream msg;
        msg << "matrix flagged unitary has defect " << defect << " > " << tol;
        throw ValidationError(msg.str());
    }
    return op;
}

DenseOperator DenseOperator::adjoint() const {
    DenseOperator out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
}

double DenseOperator::hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
}

double DenseOperator::unitarity_defect() const {
    DenseOperator gram = adjoint() * (*this);
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) {
            Complex expected = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            worst = std::max(worst, std::abs(gram.at(r, c) - expected));
        }
    return worst;
}

bool DenseOperator::is_hermitian(double tol) const {
    return hermiticity_defect() <= tol;
}

double DenseOperator::max_abs_entry() const {
    double worst = 0.0;
    for (const Complex& z : m_) worst = std::max(worst, std::abs(z));
    return worst;
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& rhs) {
    if (dim_ != rhs.dim_) throw ValidationError("operator dimension mismatch in +");
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += rhs.m_[i];
    return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& rhs) {
    if (dim_ != rhs.dim_) throw ValidationError("operator dimension mismatch in -");
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] -= rhs.m_[i];
    return *this;
}

DenseOperator& DenseOperator::operator*=(Complex scale) {
    for (Complex& z : m_) z *= scale;
    return *this;
}

DenseOperator DenseOperator::operator*(const DenseOperator& rhs) const {
    if (dim_ != rhs.dim_) throw ValidationError("operator dimension mismatch in *");
    DenseOperator out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int k = 0; k < dim_; ++k) {
            Complex a = at(r, k);
            if (a == Complex{0.0, 0.0}) continue;
            for (int c = 0; c < dim_; ++c) out.at(r, c) += a * rhs.at(k, c);
        }
    return out;
}

void DenseOperator::apply(const Complex* x, Complex* y) const {
    kernels::matvec(dim_, m_.data(), x, y);
}

JointState DenseOperator::apply(const JointState& psi) const {
    if (psi.total_dim() != static_cast<std::size_t>(dim_))
        throw ValidationError("operator/state dimension mismatch");
    JointState out = psi;
    apply(psi.amps.data(), out.amps.data());
    return out;
}

DenseOperator op_tensor(const DenseOperator& a, const DenseOperator& b) {
    std::size_t total = static_cast<std::size_t>(a.dim()) * b.dim();
    if (total > max_total_dimension()) {
        std::ostringstream msg;
        msg << "operator tensor dimension " << total << " exceeds cap "
            << max_total_dimension() << " (override with WEAKMEAS_MAX_DIM)";
        throw CapacityError(msg.str());
    }
    int da = a.dim(), db = b.dim();
    DenseOperator out(static_cast<int>(total));
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca) {
            Complex f = a.at(ra, ca);
            if (f == Complex{0.0, 0.0}) continue;
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    out.at(ra * db + rb, ca * db + cb) = f * b.at(rb, cb);
        }
    return out;
}

DenseOperator pauli_x() {
    return DenseOperator(2, {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}});
}

DenseOperator pauli_y() {
    return DenseOperator(2, {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}});
}

DenseOperator pauli_z() {
    return DenseOperator(2, {Complex{-1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}});
}

DenseOperator raising() {
    return DenseOperator(2, {Complex{0, 0}, Complex{0, 0}, Complex{1, 0}, Complex{0, 0}});
}

DenseOperator lowering() {
    return DenseOperator(2, {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}});
}

DenseOperator projector(int dim, int index) {
    if (index < 0 || index >= dim) throw ValidationError("projector index out of range");
    DenseOperator op(dim);
    op.at(index, index) = Complex{1.0, 0.0};
    return op;
}

DenseOperator annihilation(int n_max) {
    if (n_max < 0) throw ValidationError("n_max must be nonnegative");
    DenseOperator op(n_max + 1);
    for (int n = 1; n <= n_max; ++n)
        op.at(n - 1, n) = Complex{std::sqrt(static_cast<double>(n)), 0.0};
    return op;
}

DenseOperator creation(int n_max) { return annihilation(n_max).adjoint(); }

DenseOperator number_operator(int n_max) {
    if (n_max < 0) throw ValidationError("n_max must be nonnegative");
    DenseOperator op(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        op.at(n, n) = Complex{static_cast<double>(n), 0.0};
    return op;
}

} // namespace weakmeas
