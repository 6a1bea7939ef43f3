#include "doctest.h"

#include "equiproj/dense_matrix.hpp"
#include "equiproj/kernels.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace {

using namespace equiproj;

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& e : v) e = u(rng);
    return v;
}

// Relative tolerance for scalar-vs-AVX2 comparisons: FMA and lane reordering
// change rounding, not math.
constexpr double kRel = 1e-11;

double rel_diff(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("dot/axpy/scale: exact hand values") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> y = {2.0, -1.0, 0.5, 0.0, 1.0};
    CHECK(kernels::dot(x.data(), y.data(), 5) == doctest::Approx(6.5).epsilon(1e-15));

    std::vector<double> z = y;
    kernels::axpy(2.0, x.data(), z.data(), 5);
    CHECK(z[0] == doctest::Approx(4.0));
    CHECK(z[4] == doctest::Approx(11.0));

    kernels::scale(-0.5, z.data(), 5);
    CHECK(z[0] == doctest::Approx(-2.0));
}

TEST_CASE("gemm: 2x3 · 3x2 hand value") {
    const std::vector<double> a = {1, 2, 3, 4, 5, 6};        // 2×3
    const std::vector<double> b = {7, 8, 9, 10, 11, 12};     // 3×2
    std::vector<double> c(4, 0.0);
    kernels::gemm(2, 3, 2, a.data(), b.data(), c.data());
    CHECK(c[0] == doctest::Approx(58));
    CHECK(c[1] == doctest::Approx(64));
    CHECK(c[2] == doctest::Approx(139));
    CHECK(c[3] == doctest::Approx(154));

    // accumulate adds on top
    kernels::gemm(2, 3, 2, a.data(), b.data(), c.data(), true);
    CHECK(c[3] == doctest::Approx(308));
}

TEST_CASE("gemv matches gemm on a column") {
    std::mt19937_64 rng(11);
    const auto a = random_vec(7 * 5, rng);
    const auto x = random_vec(5, rng);
    std::vector<double> y1(7, 0.0);
    std::vector<double> y2(7, 0.0);
    kernels::gemv(7, 5, a.data(), x.data(), y1.data());
    kernels::gemm(7, 5, 1, a.data(), x.data(), y2.data());
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(rel_diff(y1[i], y2[i]) <= kRel);
    }
}

TEST_CASE("scalar and AVX2 variants agree on random inputs") {
    if (!kernels::detail::avx2_usable()) {
        MESSAGE("AVX2 backend not usable on this machine; skipping");
        return;
    }
    std::mt19937_64 rng(2024);
    // Sizes straddle vector-width boundaries (multiples of 4 ± remainder).
    for (std::size_t n : {1u, 3u, 4u, 7u, 8u, 17u, 64u, 129u}) {
        const auto x = random_vec(n, rng);
        const auto y = random_vec(n, rng);
        CHECK(rel_diff(kernels::detail::dot_scalar(x.data(), y.data(), n),
                       kernels::detail::dot_avx2(x.data(), y.data(), n)) <= kRel);

        auto z1 = y;
        auto z2 = y;
        kernels::detail::axpy_scalar(0.37, x.data(), z1.data(), n);
        kernels::detail::axpy_avx2(0.37, x.data(), z2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(rel_diff(z1[i], z2[i]) <= kRel);

        kernels::detail::scale_scalar(-1.91, z1.data(), n);
        kernels::detail::scale_avx2(-1.91, z2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(rel_diff(z1[i], z2[i]) <= kRel);
    }

    for (auto [m, k, n] : {std::array<std::size_t, 3>{3, 5, 4},
                           std::array<std::size_t, 3>{8, 8, 8},
                           std::array<std::size_t, 3>{13, 7, 9},
                           std::array<std::size_t, 3>{1, 17, 1}}) {
        const auto a = random_vec(m * k, rng);
        const auto b = random_vec(k * n, rng);
        std::vector<double> c1(m * n, 0.5);
        std::vector<double> c2(m * n, 0.5);
        kernels::detail::gemm_scalar(m, k, n, a.data(), b.data(), c1.data(), true);
        kernels::detail::gemm_avx2(m, k, n, a.data(), b.data(), c2.data(), true);
        for (std::size_t i = 0; i < m * n; ++i) {
            CHECK(rel_diff(c1[i], c2[i]) <= kRel);
        }

        const auto x = random_vec(k, rng);
        std::vector<double> y1(m, 0.0);
        std::vector<double> y2(m, 0.0);
        kernels::detail::gemv_scalar(m, k, a.data(), x.data(), y1.data(), false);
        kernels::detail::gemv_avx2(m, k, a.data(), x.data(), y2.data(), false);
        for (std::size_t i = 0; i < m; ++i) CHECK(rel_diff(y1[i], y2[i]) <= kRel);
    }
}

TEST_CASE("dispatcher resolves to a valid backend") {
    const kernels::Backend b = kernels::active_backend();
    CHECK((b == kernels::Backend::scalar || b == kernels::Backend::avx2));
    if (b == kernels::Backend::avx2) CHECK(kernels::detail::avx2_usable());
    CHECK(kernels::backend_name(b) != nullptr);
}

TEST_CASE("DenseMatrix helpers: transpose, hcat, vstack, norms") {
    const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {3, 4}});
    const DenseMatrix at = transpose(a);
    CHECK(at.at(0, 1) == 3.0);
    CHECK(at.at(1, 0) == 2.0);

    const DenseMatrix h = hcat({a, DenseMatrix::identity(2)});
    CHECK(h.rows == 2);
    CHECK(h.cols == 4);
    CHECK(h.at(1, 2) == 0.0);
    CHECK(h.at(1, 3) == 1.0);

    const DenseMatrix v = vstack({a, DenseMatrix::identity(2)});
    CHECK(v.rows == 4);
    CHECK(v.at(2, 0) == 1.0);

    CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
    CHECK(max_abs(a) == 4.0);
    CHECK(max_abs_diff(a, a) == 0.0);

    const DenseMatrix prod = multiply(a, a);
    CHECK(prod.at(0, 0) == doctest::Approx(7));
    CHECK(prod.at(0, 1) == doctest::Approx(10));
    CHECK(prod.at(1, 0) == doctest::Approx(15));
    CHECK(prod.at(1, 1) == doctest::Approx(22));
}

} // TEST_SUITE
