// AVX2 + FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; callers reach it through the runtime dispatcher, so the
// rest of the library stays runnable on any x86-64.

#include "equiproj/kernels.hpp"

#include <immintrin.h>

namespace equiproj::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

} // namespace

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i),
                               _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                               _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i),
                               _mm256_loadu_pd(y + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) x[i] *= a;
}

void gemm_avx2(std::size_t m, std::size_t k, std::size_t n, const double* a,
               const double* b, double* c, bool accumulate) {
    if (!accumulate) {
        std::size_t i = 0;
        const __m256d z = _mm256_setzero_pd();
        for (; i + 4 <= m * n; i += 4) _mm256_storeu_pd(c + i, z);
        for (; i < m * n; ++i) c[i] = 0.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = arow[l];
            if (ail == 0.0) continue;
            const double* brow = b + l * n;
            const __m256d va = _mm256_set1_pd(ail);
            std::size_t j = 0;
            for (; j + 8 <= n; j += 8) {
                __m256d c0 = _mm256_loadu_pd(crow + j);
                __m256d c1 = _mm256_loadu_pd(crow + j + 4);
                c0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), c0);
                c1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j + 4), c1);
                _mm256_storeu_pd(crow + j, c0);
                _mm256_storeu_pd(crow + j + 4, c1);
            }
            for (; j + 4 <= n; j += 4) {
                __m256d c0 = _mm256_loadu_pd(crow + j);
                c0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), c0);
                _mm256_storeu_pd(crow + j, c0);
            }
            for (; j < n; ++j) crow[j] += ail * brow[j];
        }
    }
}

void gemv_avx2(std::size_t m, std::size_t n, const double* a, const double* x,
               double* y, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        const double r = dot_avx2(a + i * n, x, n);
        y[i] = accumulate ? y[i] + r : r;
    }
}

} // namespace equiproj::kernels::detail
