#pragma once

#include <vector>

#include "weakmeas/states.hpp"

namespace weakmeas {

/// Dense square complex matrix, row-major storage. Hermiticity/unitarity are
/// verified on request rather than trusted from flags.
class DenseOperator {
  public:
    DenseOperator() = default;
    explicit DenseOperator(int dim); // zero matrix
    DenseOperator(int dim, std::vector<Complex> entries);

    static DenseOperator identity(int dim);
    /// Verifies max|M - M^dag| <= tol before returning; throws ValidationError.
    static DenseOperator hermitian(int dim, std::vector<Complex> entries,
                                   double tol = 1e-12);
    /// Verifies max|U^dag U - 1| <= tol before returning; throws ValidationError.
    static DenseOperator unitary(int dim, std::vector<Complex> entries,
                                 double tol = 1e-10);

    int dim() const { return dim_; }
    const std::vector<Complex>& entries() const { return m_; }
    Complex at(int r, int c) const { return m_[static_cast<std::size_t>(r) * dim_ + c]; }
    Complex& at(int r, int c) { return m_[static_cast<std::size_t>(r) * dim_ + c]; }

    DenseOperator adjoint() const;
    double hermiticity_defect() const;   // max_ij |M_ij - conj(M_ji)|
    double unitarity_defect() const;     // max_ij |(U^dag U - 1)_ij|
    bool is_hermitian(double tol = 1e-12) const;
    double max_abs_entry() const;

    DenseOperator& operator+=(const DenseOperator& rhs);
    DenseOperator& operator-=(const DenseOperator& rhs);
    DenseOperator& operator*=(Complex scale);

    friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
    friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
    friend DenseOperator operator*(Complex s, DenseOperator a) { return a *= s; }
    friend DenseOperator operator*(DenseOperator a, Complex s) { return a *= s; }
    DenseOperator operator*(const DenseOperator& rhs) const; // matrix product

    /// y = M x. Dispatches to the OpenMP kernel for large dimensions.
    void apply(const Complex* x, Complex* y) const;
    JointState apply(const JointState& psi) const;

  private:
    int dim_ = 0;
    std::vector<Complex> m_;
};

/// Kronecker product consistent with tensor_product's layout:
/// (A (x) B)(x (x) y) = (A x) (x) (B y). Capacity-checked.
DenseOperator op_tensor(const DenseOperator& a, const DenseOperator& b);

// Standard two-level operators on the basis order {0, 1}.
DenseOperator pauli_x();
DenseOperator pauli_y();
DenseOperator pauli_z();               // diag(-1, +1): +1 on the upper state
DenseOperator raising();               // |1><0|
DenseOperator lowering();              // |0><1|
DenseOperator projector(int dim, int index);

// Truncated bosonic ladder operators on n_max + 1 levels.
DenseOperator annihilation(int n_max);
DenseOperator creation(int n_max);
DenseOperator number_operator(int n_max);

} // namespace weakmeas
