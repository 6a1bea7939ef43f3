#include "equiproj/kernels.hpp"

namespace equiproj::kernels::detail {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const double* a,
                 const double* b, double* c, bool accumulate) {
    if (!accumulate) {
        for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    }
    // i-l-j order: the inner loop streams a row of B and a row of C.
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = arow[l];
            if (ail == 0.0) continue;
            const double* brow = b + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
        }
    }
}

void gemv_scalar(std::size_t m, std::size_t n, const double* a,
                 const double* x, double* y, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        const double r = dot_scalar(a + i * n, x, n);
        y[i] = accumulate ? y[i] + r : r;
    }
}

} // namespace equiproj::kernels::detail
