#include "doctest.h"

#include "equiproj/errors.hpp"
#include "equiproj/groups.hpp"
#include "equiproj/numerics.hpp"
#include "equiproj/projector_svd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace {

using namespace equiproj;

constexpr double kPi = 3.14159265358979323846;

GroupSpec az_eq_spec() {
    const DenseMatrix az = so3_generators()[2];
    return custom_spec({az}, kPi, "az", {az});
}

DenseMatrix random_theta(std::size_t r, std::size_t c, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    DenseMatrix m(r, c);
    for (double& v : m.entries) v = n(rng);
    return m;
}

// Orthonormal basis (as vec'd 9-columns) of the 7-dim subspace retained at
// b = 1.5 for the A_z → A_z constraint: rotation-form upper-left block plus
// every entry touching the third row/column.
DenseMatrix az_subspace_basis(bool seven) {
    auto vec9 = [](const DenseMatrix& m) { return vec(m); };
    std::vector<DenseMatrix> mats;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    mats.push_back(inv_sqrt2 * DenseMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));
    mats.push_back(inv_sqrt2 * DenseMatrix::from_rows({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}));
    mats.push_back(DenseMatrix::from_rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}));
    if (seven) {
        mats.push_back(DenseMatrix::from_rows({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}));
        mats.push_back(DenseMatrix::from_rows({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}));
        mats.push_back(DenseMatrix::from_rows({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}));
        mats.push_back(DenseMatrix::from_rows({{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}));
    }
    DenseMatrix q(9, mats.size());
    for (std::size_t c = 0; c < mats.size(); ++c) {
        const std::vector<double> v = vec9(mats[c]);
        for (std::size_t r = 0; r < 9; ++r) q.at(r, c) = v[r];
    }
    return q;
}

double principal_angle_sine(const DenseMatrix& q1, const DenseMatrix& q2) {
    // σ_max((I − Q₁Q₁ᵀ)·Q₂): the sine of the largest principal angle.
    const DenseMatrix residual =
        q2 - multiply(q1, multiply(transpose(q1), q2));
    const SvdResult dec = svd(residual);
    return dec.sigma.empty() ? 0.0 : *std::max_element(dec.sigma.begin(), dec.sigma.end());
}

} // namespace

TEST_SUITE("projector_svd") {

TEST_CASE("constraint for A_z → A_z is the exact integer 9×9 block matrix") {
    const ConstraintMatrix c = build_constraint(az_eq_spec());
    REQUIRE(c.L.rows == 9);
    REQUIRE(c.L.cols == 9);
    CHECK(c.d == 3);
    CHECK(c.d_prime == 3);
    REQUIRE(c.per_generator.size() == 1);

    const DenseMatrix az = so3_generators()[2];
    DenseMatrix expect(9, 9);
    // L = A_zᵀ ⊗ I₃ − I₃ ⊗ A_z = [[−A_z, I, 0], [−I, −A_z, 0], [0, 0, −A_z]].
    auto put_block = [&](std::size_t bi, std::size_t bj, const DenseMatrix& m,
                         double scale) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                expect.at(3 * bi + i, 3 * bj + j) += scale * m.at(i, j);
    };
    put_block(0, 0, az, -1.0);
    put_block(0, 1, DenseMatrix::identity(3), 1.0);
    put_block(1, 0, DenseMatrix::identity(3), -1.0);
    put_block(1, 1, az, -1.0);
    put_block(2, 2, az, -1.0);
    CHECK(max_abs_diff(c.L, expect) == 0.0);

    // Acting on vec(W): L·vec(W) = vec(W·A_z − A_z·W).
    const DenseMatrix w = random_theta(3, 3, 5);
    const std::vector<double> lv = multiply(c.L, vec(w));
    const DenseMatrix comm = multiply(w, az) - multiply(az, w);
    const std::vector<double> expect_v = vec(comm);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(lv[i] == doctest::Approx(expect_v[i]).epsilon(1e-14));
    }
}

TEST_CASE("A_z constraint spectrum is {0,0,0,1,1,1,1,2,2}") {
    const ConstraintMatrix c = build_constraint(az_eq_spec());
    std::vector<double> sigma = svd(c.L).sigma;
    std::sort(sigma.begin(), sigma.end());
    const std::vector<double> expect = {0, 0, 0, 1, 1, 1, 1, 2, 2};
    REQUIRE(sigma.size() == expect.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        CHECK(std::abs(sigma[i] - expect[i]) <= 1e-9);
    }
}

TEST_CASE("trivial action gives a zero constraint") {
    const DenseMatrix z(3, 3);
    const GroupSpec spec = custom_spec({z}, 1.0, "trivial", {z});
    CHECK(frobenius_norm(build_constraint(spec).L) == 0.0);
}

TEST_CASE("so3 standard→standard: 27×9 stack, 1-dim nullspace, projector onto vec(I)") {
    const GroupSpec spec = with_equal_output(so3_spec());
    const ConstraintMatrix c = build_constraint(spec);
    CHECK(c.L.rows == 27);
    CHECK(c.L.cols == 9);
    const std::vector<double> sigma = svd(c.L).sigma;
    CHECK(std::count_if(sigma.begin(), sigma.end(),
                        [](double s) { return s <= 1e-10; }) == 1);

    const Projector p = build_equivariant_projector(spec, 1e-9);
    // Schur's lemma: the only matrices commuting with all rotations are
    // multiples of the identity, so B is the rank-1 projector onto vec(I)/√3.
    DenseMatrix expect(9, 9);
    const std::vector<double> vi = vec(DenseMatrix::identity(3));
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            expect.at(i, j) = vi[i] * vi[j] / 3.0;
    CHECK(frobenius_diff(p.matrix, expect) <= 1e-10);

    const DenseMatrix w = apply_projector(p, random_theta(3, 3, 11));
    // W = c·I commutes with every rotation.
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const GroupElement g = sample_element(spec, rng);
        CHECK(frobenius_diff(multiply(w, g.matrix_in),
                             multiply(g.matrix_in, w)) <= 1e-9);
    }
}

TEST_CASE("golden A_z projection at b = 1.5") {
    const Projector p = build_equivariant_projector(az_eq_spec(), 1.5);
    const DenseMatrix theta =
        DenseMatrix::from_rows({{2, 3, 1}, {-1, 4, 2}, {3, -1, 5}});
    const DenseMatrix expect =
        DenseMatrix::from_rows({{3, 2, 1}, {-2, 3, 2}, {3, -1, 5}});
    CHECK(max_abs_diff(apply_projector(p, theta), expect) <= 1e-10);
}

TEST_CASE("A_z retained subspaces match the closed-form bases") {
    const GroupSpec spec = az_eq_spec();

    const Projector p7 = build_equivariant_projector(spec, 1.5);
    const DenseMatrix q7 = az_subspace_basis(true);
    REQUIRE(p7.basis.has_value());
    CHECK(p7.basis->cols == 7);
    CHECK(principal_angle_sine(q7, *p7.basis) <= 1e-8);
    CHECK(principal_angle_sine(*p7.basis, q7) <= 1e-8);
    CHECK(frobenius_diff(p7.matrix, multiply(q7, transpose(q7))) <= 1e-9);

    const Projector p3 = build_equivariant_projector(spec, 0.5);
    const DenseMatrix q3 = az_subspace_basis(false);
    REQUIRE(p3.basis.has_value());
    CHECK(p3.basis->cols == 3);
    CHECK(principal_angle_sine(q3, *p3.basis) <= 1e-8);
    CHECK(frobenius_diff(p3.matrix, multiply(q3, transpose(q3))) <= 1e-9);

    // b = 0.5 projection of any Θ has the [[α,β,0],[−β,α,0],[0,0,γ]] pattern.
    const DenseMatrix w = apply_projector(p3, random_theta(3, 3, 21));
    CHECK(std::abs(w.at(0, 0) - w.at(1, 1)) <= 1e-10);
    CHECK(std::abs(w.at(0, 1) + w.at(1, 0)) <= 1e-10);
    for (auto [i, j] : {std::pair<int, int>{0, 2}, {1, 2}, {2, 0}, {2, 1}}) {
        CHECK(std::abs(w.at(i, j)) <= 1e-10);
    }
}

TEST_CASE("so2 invariance: all-or-nothing by cutoff") {
    const GroupSpec spec = so2_spec();
    CHECK(frobenius_norm(build_invariant_projector(spec, 0.5).matrix) == 0.0);
    CHECK(frobenius_diff(build_invariant_projector(spec, 1.5).matrix,
                         DenseMatrix::identity(2)) <= 1e-12);
}

TEST_CASE("cyclic_grid(3,4) invariant projector at b→0 is Reynolds averaging") {
    const GroupSpec spec = cyclic_grid_spec(3, 4);
    const Projector p = build_invariant_projector(spec, 1e-9);
    DenseMatrix reynolds(9, 9);
    for (std::size_t g = 0; g < 4; ++g) {
        const DenseMatrix rho = spec.rho_in({static_cast<double>(g)});
        for (std::size_t e = 0; e < 81; ++e) {
            reynolds.entries[e] += rho.entries[e] / 4.0;
        }
    }
    const DenseMatrix w = random_theta(9, 1, 33);
    const std::vector<double> via_p =
        multiply(p.matrix, std::vector<double>(w.entries));
    const std::vector<double> via_r =
        multiply(reynolds, std::vector<double>(w.entries));
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(via_p[i] == doctest::Approx(via_r[i]).epsilon(1e-10));
    }
    CHECK(frobenius_diff(p.matrix, reynolds) <= 1e-10);
}

TEST_CASE("hard projectors are symmetric, idempotent, monotone in b") {
    const std::vector<double> cutoffs = {0.5, 1.5, 3.0};
    std::vector<GroupSpec> specs = {az_eq_spec(),
                                    with_equal_output(cyclic_grid_spec(3, 4)),
                                    with_equal_output(shift_circulant_spec(6))};
    for (const GroupSpec& spec : specs) {
        std::vector<Projector> chain;
        for (double b : cutoffs) {
            chain.push_back(build_equivariant_projector(spec, b));
            const DenseMatrix& m = chain.back().matrix;
            CHECK(frobenius_diff(multiply(m, m), m) <= 1e-10);
            CHECK(frobenius_diff(m, transpose(m)) <= 1e-10);
        }
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            // range(B(b₁)) ⊆ range(B(b₂)): B₂B₁ = B₁.
            CHECK(frobenius_diff(multiply(chain[i + 1].matrix, chain[i].matrix),
                                 chain[i].matrix) <= 1e-10);
        }
    }
}

TEST_CASE("b above σ_max makes apply the identity") {
    const Projector p = build_equivariant_projector(az_eq_spec(), 2.5);
    const DenseMatrix theta = random_theta(3, 3, 7);
    CHECK(max_abs_diff(apply_projector(p, theta), theta) <= 1e-12);
}

TEST_CASE("apply_projector handles vector and row-wise invariance shapes") {
    const GroupSpec spec = cyclic_grid_spec(3, 4);
    const Projector p = build_invariant_projector(spec, 1e-9);

    const DenseMatrix col = random_theta(9, 1, 40);
    DenseMatrix row(1, 9);
    for (std::size_t i = 0; i < 9; ++i) row.at(0, i) = col.at(i, 0);
    const DenseMatrix pc = apply_projector(p, col);
    const DenseMatrix pr = apply_projector(p, row);
    REQUIRE(pc.rows == 9);
    REQUIRE(pr.cols == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(pc.at(i, 0) == doctest::Approx(pr.at(0, i)).epsilon(1e-14));
    }

    // Matrix with d columns: applied row by row.
    const DenseMatrix many = random_theta(4, 9, 41);
    const DenseMatrix pm = apply_projector(p, many);
    for (std::size_t r = 0; r < 4; ++r) {
        DenseMatrix one(1, 9);
        for (std::size_t i = 0; i < 9; ++i) one.at(0, i) = many.at(r, i);
        const DenseMatrix pone = apply_projector(p, one);
        for (std::size_t i = 0; i < 9; ++i) {
            CHECK(pm.at(r, i) == doctest::Approx(pone.at(0, i)).epsilon(1e-14));
        }
    }

    CHECK_THROWS_AS(apply_projector(p, random_theta(5, 4, 42)), shape_error);
    const Projector peq = build_equivariant_projector(az_eq_spec(), 1.5);
    CHECK_THROWS_AS(apply_projector(peq, random_theta(2, 3, 43)), shape_error);
}

TEST_CASE("idempotence of apply on hard routes") {
    const Projector p = build_equivariant_projector(az_eq_spec(), 1.5);
    const DenseMatrix theta = random_theta(3, 3, 50);
    const DenseMatrix once = apply_projector(p, theta);
    CHECK(max_abs_diff(apply_projector(p, once), once) <= 1e-12);
}

TEST_CASE("smooth route: direct substitutions and eigenvalue oracle") {
    const GroupSpec spec = az_eq_spec();
    const Projector p = build_smooth(spec, 0.5, 1.0);
    CHECK(p.route == Route::svd_smooth);
    REQUIRE(p.smooth_s.has_value());

    // γ(σ) checks straight off the stored spectrum: σ < b → 1, else e^{−σ²/s²}.
    for (const auto& [sigma, gamma] : p.spectrum) {
        if (sigma < 0.5) {
            CHECK(gamma == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(gamma ==
                  doctest::Approx(std::exp(-sigma * sigma)).epsilon(1e-12));
        }
    }

    // Assembled-matrix eigenvalues: {1,1,1, e^{−1}×4, e^{−4}×2}.
    const SymmetricEig eig = symmetric_eig(p.matrix);
    std::vector<double> vals = eig.values;
    std::sort(vals.begin(), vals.end());
    std::vector<double> expect = {std::exp(-4.0), std::exp(-4.0),
                                  std::exp(-1.0), std::exp(-1.0),
                                  std::exp(-1.0), std::exp(-1.0),
                                  1.0, 1.0, 1.0};
    REQUIRE(vals.size() == expect.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        CHECK(vals[i] == doctest::Approx(expect[i]).epsilon(1e-10));
    }
    for (double v : vals) {
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
    // γ non-increasing in σ above the cutoff (spectrum is stored ascending).
    for (std::size_t i = 0; i + 1 < p.spectrum.size(); ++i) {
        if (p.spectrum[i].first >= 0.5) {
            CHECK(p.spectrum[i + 1].second <= p.spectrum[i].second + 1e-15);
        }
    }
}

TEST_CASE("smooth s → 0⁺ collapses to the hard projector") {
    const GroupSpec spec = az_eq_spec();
    const Projector hard = build_equivariant_projector(spec, 0.5);
    const Projector smooth = build_smooth(spec, 0.5, 1e-4);
    CHECK(frobenius_diff(hard.matrix, smooth.matrix) <= 1e-10);

    const GroupSpec inv = cyclic_grid_spec(3, 4);
    const Projector ih = build_invariant_projector(inv, 0.5);
    const Projector is = build_smooth(inv, 0.5, 1e-4);
    CHECK(frobenius_diff(ih.matrix, is.matrix) <= 1e-10);
}

TEST_CASE("exact-equivariance subspace commutes with sampled full-group elements") {
    struct Case {
        GroupSpec spec;
        double b;
    };
    std::vector<Case> cases = {{with_equal_output(so2_spec()), 1e-9},
                               {with_equal_output(so3_spec()), 1e-9},
                               {with_equal_output(shift_circulant_spec(8)), 1e-9},
                               {with_equal_output(cyclic_grid_spec(3, 4)), 1e-9}};
    Rng rng(8);
    for (const Case& c : cases) {
        const Projector p = build_equivariant_projector(c.spec, c.b);
        const DenseMatrix w = apply_projector(
            p, random_theta(c.spec.dim_out(), c.spec.dim_in(), 60));
        for (int i = 0; i < 100; ++i) {
            const GroupElement g = sample_element(c.spec, rng);
            const DenseMatrix rho_out =
                g.matrix_out ? *g.matrix_out : g.matrix_in;
            CHECK(frobenius_diff(multiply(w, g.matrix_in),
                                 multiply(rho_out, w)) <= 1e-9);
        }
    }
}

TEST_CASE("discrete substitution: b→0 gives exact symmetry over C₄ and C₈") {
    for (std::size_t n : {4u, 8u}) {
        const GroupSpec inv = shift_circulant_spec(n);
        const Projector p = build_invariant_projector(inv, 1e-9);
        const DenseMatrix w = apply_projector(p, random_theta(n, 1, 70 + n));
        std::vector<double> wv(w.entries);
        for (std::size_t k = 0; k < n; ++k) {
            const DenseMatrix rho = inv.rho_in({static_cast<double>(k)});
            const std::vector<double> moved = multiply(transpose(rho), wv);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(moved[i] == doctest::Approx(wv[i]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("softness_to_cutoff: endpoints, tie extension, published spectrum") {
    const std::vector<double> az = {0, 0, 0, 1, 1, 1, 1, 2, 2};
    CHECK(softness_to_cutoff(az, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(softness_to_cutoff(az, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    const double b0 = softness_to_cutoff(az, 0.0);
    CHECK(b0 > 1e-10);
    CHECK(b0 < 1.0);

    // Tie extension: asking for part of a tied block retains the whole block.
    const std::vector<double> tied = {0, 1, 1, 1, 1, 2};
    const double bt = softness_to_cutoff(tied, 0.2); // m = 1 + 1 → extends to 5
    CHECK(bt > 1.0);
    CHECK(bt < 2.0);

    CHECK_THROWS_AS(softness_to_cutoff({}, 0.5), invalid_input_error);
}

TEST_CASE("projector metadata fields are filled coherently") {
    const Projector p = build_equivariant_projector(az_eq_spec(), 1.5);
    CHECK(p.route == Route::svd_hard);
    CHECK(p.cutoff_b == 1.5);
    CHECK(!p.smooth_s.has_value());
    CHECK(p.equivariant);
    CHECK(p.d == 3);
    CHECK(p.d_prime == 3);
    REQUIRE(p.spectrum.size() == 9);
    double retained = 0;
    for (const auto& [sigma, gamma] : p.spectrum) {
        CHECK((gamma == 0.0 || gamma == 1.0));
        retained += gamma;
    }
    CHECK(retained == 7.0);
    // spectrum ascending
    for (std::size_t i = 0; i + 1 < p.spectrum.size(); ++i) {
        CHECK(p.spectrum[i].first <= p.spectrum[i + 1].first + 1e-15);
    }
}

} // TEST_SUITE
