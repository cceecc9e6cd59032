#include "weakmeas/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace weakmeas::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void matvec_serial(int dim, const Complex* m, const Complex* x, Complex* y) {
    for (int r = 0; r < dim; ++r) {
        const Complex* row = m + static_cast<std::size_t>(r) * dim;
        Complex acc{0.0, 0.0};
        for (int c = 0; c < dim; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
}

void matvec_parallel(int dim, const Complex* m, const Complex* x, Complex* y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < dim; ++r) {
        const Complex* row = m + static_cast<std::size_t>(r) * dim;
        Complex acc{0.0, 0.0};
        for (int c = 0; c < dim; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
}

void matvec(int dim, const Complex* m, const Complex* x, Complex* y) {
#ifdef _OPENMP
    if (dim >= kParallelThreshold && omp_get_max_threads() > 1) {
        matvec_parallel(dim, m, x, y);
        return;
    }
#endif
    matvec_serial(dim, m, x, y);
}

double inf_norm(int dim, const Complex* m) {
    double worst = 0.0;
    for (int r = 0; r < dim; ++r) {
        const Complex* row = m + static_cast<std::size_t>(r) * dim;
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += std::abs(row[c]);
        worst = std::max(worst, s);
    }
    return worst;
}

void expmv(int dim, const Complex* m, Complex scale, const Complex* x,
           Complex* y, double tol) {
    // Split into substeps with |sub_scale| * ||M||_inf <= 1, then apply a
    // truncated Taylor series of each substep to the running vector.
    const double scaled_norm = std::abs(scale) * inf_norm(dim, m);
    const std::int64_t substeps =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(scaled_norm)));
    const Complex sub_scale = scale / static_cast<double>(substeps);

    std::vector<Complex> current(x, x + dim);
    std::vector<Complex> term(dim), next(dim);
    for (std::int64_t s = 0; s < substeps; ++s) {
        term = current;
        double base = 0.0;
        for (int i = 0; i < dim; ++i) base = std::max(base, std::abs(current[i]));
        for (int k = 1; k <= 64; ++k) {
            matvec(dim, m, term.data(), next.data());
            const Complex factor = sub_scale / static_cast<double>(k);
            double term_mag = 0.0;
            for (int i = 0; i < dim; ++i) {
                next[i] *= factor;
                current[i] += next[i];
                term_mag = std::max(term_mag, std::abs(next[i]));
            }
            term.swap(next);
            if (term_mag <= tol * std::max(base, 1e-300)) break;
        }
    }
    std::copy(current.begin(), current.end(), y);
}

} // namespace weakmeas::kernels
