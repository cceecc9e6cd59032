#pragma once

#include <complex>
#include <cstddef>

namespace weakmeas::kernels {

using Complex = std::complex<double>;

/// Dimension at or above which apply()/matvec() switches to the OpenMP lane.
inline constexpr int kParallelThreshold = 64;

int max_threads();
bool openmp_enabled();

/// Serial reference: y = M x, M row-major dim x dim.
void matvec_serial(int dim, const Complex* m, const Complex* x, Complex* y);

/// OpenMP lane, parallel over rows. Each row is accumulated in the same
/// serial order as matvec_serial, so the two lanes agree bitwise.
void matvec_parallel(int dim, const Complex* m, const Complex* x, Complex* y);

/// Dispatching entry point used by the library.
void matvec(int dim, const Complex* m, const Complex* x, Complex* y);

/// y = exp(scale * M) x computed by scaling-and-squaring applied to the
/// vector: M is split as M/2^s with s chosen so |scale|*max_row_sum(M)/2^s
/// stays O(1), and each substep applies a Taylor series truncated when the
/// running term drops below tol * |y|. Exact for the anti-hermitian generators
/// used here up to roundoff; cost is a handful of matvecs per substep.
void expmv(int dim, const Complex* m, Complex scale, const Complex* x,
           Complex* y, double tol = 1e-15);

/// max_r sum_c |M_rc| — the induced infinity norm used by expmv's scaling.
double inf_norm(int dim, const Complex* m);

} // namespace weakmeas::kernels
