#include "equiproj/kernels.hpp"

#include "equiproj/errors.hpp"

#include <cstdlib>
#include <cstring>

namespace equiproj::kernels {

namespace detail {

bool avx2_compiled() {
#if defined(EQUIPROJ_AVX2_COMPILED)
    return true;
#else
    return false;
#endif
}

bool avx2_usable() {
#if defined(EQUIPROJ_AVX2_COMPILED) && defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

#if !defined(EQUIPROJ_AVX2_COMPILED)
// Throwing stubs keep the symbols linkable in builds without the variant;
// avx2_compiled() tells callers not to come here.
namespace {
[[noreturn]] void no_avx2() {
    throw error("AVX2 kernel variant was not compiled into this build");
}
} // namespace
double dot_avx2(const double*, const double*, std::size_t) { no_avx2(); }
void axpy_avx2(double, const double*, double*, std::size_t) { no_avx2(); }
void scale_avx2(double, double*, std::size_t) { no_avx2(); }
void gemm_avx2(std::size_t, std::size_t, std::size_t, const double*,
               const double*, double*, bool) {
    no_avx2();
}
void gemv_avx2(std::size_t, std::size_t, const double*, const double*, double*,
               bool) {
    no_avx2();
}
#endif

} // namespace detail

namespace {

Backend resolve_backend() {
    if (const char* env = std::getenv("EQUIPROJ_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            return detail::avx2_usable() ? Backend::avx2 : Backend::scalar;
        }
    }
    return detail::avx2_usable() ? Backend::avx2 : Backend::scalar;
}

const Backend g_backend = resolve_backend();

} // namespace

Backend active_backend() { return g_backend; }

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

double dot(const double* x, const double* y, std::size_t n) {
    return g_backend == Backend::avx2 ? detail::dot_avx2(x, y, n)
                                      : detail::dot_scalar(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    g_backend == Backend::avx2 ? detail::axpy_avx2(a, x, y, n)
                               : detail::axpy_scalar(a, x, y, n);
}

void scale(double a, double* x, std::size_t n) {
    g_backend == Backend::avx2 ? detail::scale_avx2(a, x, n)
                               : detail::scale_scalar(a, x, n);
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c, bool accumulate) {
    g_backend == Backend::avx2
        ? detail::gemm_avx2(m, k, n, a, b, c, accumulate)
        : detail::gemm_scalar(m, k, n, a, b, c, accumulate);
}

void gemv(std::size_t m, std::size_t n, const double* a, const double* x,
          double* y, bool accumulate) {
    g_backend == Backend::avx2 ? detail::gemv_avx2(m, n, a, x, y, accumulate)
                               : detail::gemv_scalar(m, n, a, x, y, accumulate);
}

} // namespace equiproj::kernels
