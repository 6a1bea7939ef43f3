#pragma once

#include <cstddef>

/**
 * Low-level dense kernels with a scalar reference implementation and an AVX2
 * variant, selected once at startup:
 *
 *   - the AVX2 path is used when the CPU reports AVX2+FMA and the variant was
 *     compiled in (x86-64 builds);
 *   - the environment variable EQUIPROJ_KERNEL=scalar|avx2 forces a backend
 *     (requesting an unavailable one falls back to scalar).
 *
 * Both variants of every kernel are always exported under detail:: so the
 * test suite can compare them on identical inputs regardless of which one the
 * dispatcher picked.
 */
namespace equiproj::kernels {

enum class Backend { scalar, avx2 };

/// Backend the dispatcher resolved at startup.
Backend active_backend();
const char* backend_name(Backend b);

/// Σ x_i y_i.
double dot(const double* x, const double* y, std::size_t n);
/// y += a·x.
void axpy(double a, const double* x, double* y, std::size_t n);
/// x *= a.
void scale(double a, double* x, std::size_t n);
/// C = A·B (row-major, A m×k, B k×n, C m×n); accumulate adds into C instead.
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c, bool accumulate = false);
/// y = A·x (row-major A m×n); accumulate adds into y instead.
void gemv(std::size_t m, std::size_t n, const double* a, const double* x,
          double* y, bool accumulate = false);

namespace detail {

bool avx2_compiled();
bool avx2_usable(); // compiled in and reported by the CPU

double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void scale_scalar(double a, double* x, std::size_t n);
void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const double* a,
                 const double* b, double* c, bool accumulate);
void gemv_scalar(std::size_t m, std::size_t n, const double* a,
                 const double* x, double* y, bool accumulate);

// The AVX2 entry points exist in every build; when the variant was not
// compiled in they throw, and avx2_compiled() reports that up front.
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scale_avx2(double a, double* x, std::size_t n);
void gemm_avx2(std::size_t m, std::size_t k, std::size_t n, const double* a,
               const double* b, double* c, bool accumulate);
void gemv_avx2(std::size_t m, std::size_t n, const double* a, const double* x,
               double* y, bool accumulate);

} // namespace detail

} // namespace equiproj::kernels
