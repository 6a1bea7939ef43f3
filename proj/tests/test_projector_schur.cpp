#include "doctest.h"

#include "equiproj/errors.hpp"
#include "equiproj/groups.hpp"
#include "equiproj/numerics.hpp"
#include "equiproj/projector_schur.hpp"
#include "equiproj/projector_svd.hpp"

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

DenseMatrix rot_block(double a, double b) {
    return DenseMatrix::from_rows({{a, b}, {-b, a}});
}

DenseMatrix block_diag2(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows + b.rows, a.cols + b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j)
            out.at(a.rows + i, a.cols + j) = b.at(i, j);
    return out;
}

double trace(const DenseMatrix& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < m.rows && i < m.cols; ++i) t += m.at(i, i);
    return t;
}

} // namespace

TEST_SUITE("projector_schur") {

TEST_CASE("sym2: golden value, fixed point, annihilation, shape guard") {
    const DenseMatrix golden = sym2(DenseMatrix::from_rows({{2, 3}, {-1, 4}}));
    CHECK(max_abs_diff(golden, DenseMatrix::from_rows({{3, 2}, {-2, 3}})) == 0.0);

    const DenseMatrix fixed = rot_block(0.7, -2.5);
    CHECK(max_abs_diff(sym2(fixed), fixed) == 0.0);

    CHECK(frobenius_norm(sym2(DenseMatrix::from_rows({{1, 0}, {0, -1}}))) == 0.0);

    CHECK_THROWS_AS(sym2(DenseMatrix::identity(3)), shape_error);
}

TEST_CASE("classify_blocks reproduces the A_z → A_z cell table") {
    const DenseMatrix az = so3_generators()[2];
    const SchurForm sf = schur_normal(az);
    REQUIRE(sf.blocks.size() == 2); // 2×2 rotation block (λ=1), then 1×1 zero

    const BlockPlan plan = classify_blocks(sf, sf, 1.5);
    REQUIRE(plan.cells.size() == 2);
    REQUIRE(plan.cells[0].size() == 2);

    CHECK(plan.cells[0][0].equivalent);
    CHECK(plan.cells[0][0].lambda_sum == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(plan.cells[0][1].equivalent == false);
    CHECK(plan.cells[0][1].lambda_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(plan.cells[1][0].equivalent == false);
    CHECK(plan.cells[1][0].lambda_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(plan.cells[1][1].equivalent);
    CHECK(plan.cells[1][1].lambda_sum == doctest::Approx(0.0).epsilon(1e-12));

    // At b = 1.5 the deviation-1 directions (the two mixed cells) pass, the
    // equal-eigenvalue 2×2 cell keeps only its rotation-commuting half.
    CHECK(plan.cells[0][0].action == CellAction::symmetrize);
    CHECK(plan.cells[0][1].action == CellAction::pass);
    CHECK(plan.cells[1][0].action == CellAction::pass);
    CHECK(plan.cells[1][1].action == CellAction::pass);

    const BlockPlan tight = classify_blocks(sf, sf, 0.5);
    CHECK(tight.cells[0][0].action == CellAction::symmetrize);
    CHECK(tight.cells[0][1].action == CellAction::zero);
    CHECK(tight.cells[1][0].action == CellAction::zero);
    CHECK(tight.cells[1][1].action == CellAction::pass);
}

TEST_CASE("classify_blocks: trivial action is a single passing cell") {
    const SchurForm sf = schur_normal(DenseMatrix(1, 1));
    const BlockPlan plan = classify_blocks(sf, sf, 1e-9);
    REQUIRE(plan.cells.size() == 1);
    REQUIRE(plan.cells[0].size() == 1);
    CHECK(plan.cells[0][0].equivalent);
    CHECK(plan.cells[0][0].lambda_sum == 0.0);
    CHECK(plan.cells[0][0].action == CellAction::pass);
}

TEST_CASE("4D → 3D example: only the matching rotation pair survives b→0") {
    // Σ_X = diag(S₁, S₂), Σ_Y = diag(T₁, T₂) with T₁ = S₂ and a 1×1 T₂.
    const DenseMatrix s1 = rot_block(1.0, 2.0);
    const DenseMatrix s2 = rot_block(-0.5, 1.5);
    const DenseMatrix t1 = rot_block(-0.5, 1.5);
    DenseMatrix t2(1, 1);
    t2.at(0, 0) = 0.7;
    const DenseMatrix gen_in = block_diag2(s1, s2);
    const DenseMatrix gen_out = block_diag2(t1, t2);
    const GroupSpec spec = custom_spec({gen_in}, kPi, "c2ex", {gen_out});

    const BlockPlan plan =
        classify_blocks(schur_normal(gen_in), schur_normal(gen_out), 1e-9);
    std::size_t equivalent_cells = 0;
    for (const auto& row : plan.cells)
        for (const CellRule& cell : row) equivalent_cells += cell.equivalent;
    CHECK(equivalent_cells == 1);

    const DenseMatrix w = schur_project(spec, random_theta(3, 4, 17), 1e-9);
    // Sparse pattern: rows 0–1 couple only to input coords 2–3 and form a
    // rotation block; the T₂ output row is entirely zero.
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(w.at(2, j)) <= 1e-10);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(w.at(i, j)) <= 1e-10);
    CHECK(w.at(0, 2) == doctest::Approx(w.at(1, 3)).epsilon(1e-10));
    CHECK(w.at(0, 3) == doctest::Approx(-w.at(1, 2)).epsilon(1e-10));

    // Parameter count 12 → 2: the materialized projector has rank 2.
    const Projector p = materialize(spec, 1e-9);
    CHECK(trace(p.matrix) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("4D → 4D example: block-diagonal rotation pairs, rank 4") {
    const DenseMatrix s1 = rot_block(0.3, 1.1);
    const DenseMatrix s2 = rot_block(-0.8, 0.6);
    const DenseMatrix gen = block_diag2(s1, s2);
    const GroupSpec spec = custom_spec({gen}, kPi, "c2ex4", {gen});

    const DenseMatrix w = schur_project(spec, random_theta(4, 4, 18), 1e-9);
    for (auto [i, j] : {std::pair<int, int>{0, 2}, {0, 3}, {1, 2}, {1, 3},
                        {2, 0}, {2, 1}, {3, 0}, {3, 1}}) {
        CHECK(std::abs(w.at(i, j)) <= 1e-10);
    }
    CHECK(w.at(0, 0) == doctest::Approx(w.at(1, 1)).epsilon(1e-10));
    CHECK(w.at(0, 1) == doctest::Approx(-w.at(1, 0)).epsilon(1e-10));
    CHECK(w.at(2, 2) == doctest::Approx(w.at(3, 3)).epsilon(1e-10));
    CHECK(w.at(2, 3) == doctest::Approx(-w.at(3, 2)).epsilon(1e-10));

    CHECK(trace(materialize(spec, 1e-9).matrix) ==
          doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("golden A_z projection via the Schur route, exact integers") {
    const DenseMatrix theta =
        DenseMatrix::from_rows({{2, 3, 1}, {-1, 4, 2}, {3, -1, 5}});
    const DenseMatrix expect =
        DenseMatrix::from_rows({{3, 2, 1}, {-2, 3, 2}, {3, -1, 5}});
    const DenseMatrix w = schur_project(az_eq_spec(), theta, 1.5);
    CHECK(max_abs_diff(w, expect) <= 1e-12);
}

TEST_CASE("b above the largest λ-sum passes Θ through unchanged") {
    const DenseMatrix theta = random_theta(3, 3, 23);
    const DenseMatrix w = schur_project(az_eq_spec(), theta, 5.0);
    CHECK(max_abs_diff(w, theta) <= 1e-12);
}

TEST_CASE("A_z at b→0 yields the exactly equivariant family pattern") {
    const DenseMatrix w = schur_project(az_eq_spec(), random_theta(3, 3, 29), 1e-9);
    CHECK(std::abs(w.at(0, 0) - w.at(1, 1)) <= 1e-10);
    CHECK(std::abs(w.at(0, 1) + w.at(1, 0)) <= 1e-10);
    for (auto [i, j] : {std::pair<int, int>{0, 2}, {1, 2}, {2, 0}, {2, 1}}) {
        CHECK(std::abs(w.at(i, j)) <= 1e-10);
    }
    // Lemma-1 identity in the original coordinates.
    const DenseMatrix az = so3_generators()[2];
    CHECK(frobenius_diff(multiply(w, az), multiply(az, w)) <= 1e-9);
}

TEST_CASE("schur_project is linear in Θ") {
    const GroupSpec spec = az_eq_spec();
    const DenseMatrix t1 = random_theta(3, 3, 31);
    const DenseMatrix t2 = random_theta(3, 3, 32);
    const double alpha = -1.375;
    for (double b : {0.5, 1.5, 3.0}) {
        const DenseMatrix lhs = schur_project(spec, alpha * t1 + t2, b);
        const DenseMatrix rhs =
            alpha * schur_project(spec, t1, b) + schur_project(spec, t2, b);
        CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("route agreement: materialize equals the SVD projector across b") {
    std::vector<GroupSpec> specs = {
        with_equal_output(so2_spec()),
        az_eq_spec(),
        with_equal_output(cyclic_grid_spec(3, 4)),
        with_equal_output(cyclic_grid_spec(4, 4)),
        with_equal_output(cyclic_grid_spec(5, 4)),
        with_equal_output(shift_circulant_spec(8)),
    };
    for (const GroupSpec& spec : specs) {
        for (double b : {0.5, 1.5, 3.0}) {
            const Projector schur = materialize(spec, b);
            const Projector svdp = build_equivariant_projector(spec, b);
            CHECK(frobenius_diff(schur.matrix, svdp.matrix) <= 1e-9);
        }
    }
}

TEST_CASE("route agreement for invariance targets") {
    for (GroupSpec spec : {cyclic_grid_spec(3, 4), shift_circulant_spec(8)}) {
        for (double b : {0.5, 1.5, 3.0}) {
            const Projector schur = materialize(spec, b);
            const Projector svdp = build_invariant_projector(spec, b);
            REQUIRE(schur.matrix.rows == spec.dim_in());
            CHECK(frobenius_diff(schur.matrix, svdp.matrix) <= 1e-9);
        }
    }
}

TEST_CASE("materialize: identity at huge b, idempotent on the C₄ grid") {
    const Projector full = materialize(az_eq_spec(), 1e9);
    CHECK(frobenius_diff(full.matrix, DenseMatrix::identity(9)) <= 1e-12);

    const GroupSpec grid = with_equal_output(cyclic_grid_spec(3, 4));
    for (double b : {0.5, 1.5}) {
        const DenseMatrix m = materialize(grid, b).matrix;
        CHECK(frobenius_diff(multiply(m, m), m) <= 1e-10);
        CHECK(frobenius_diff(m, transpose(m)) <= 1e-10);
    }
}

TEST_CASE("materialize fills single-generator spectrum to match the SVD σ list") {
    const Projector schur = materialize(az_eq_spec(), 1.5);
    const Projector svdp = build_equivariant_projector(az_eq_spec(), 1.5);
    REQUIRE(schur.spectrum.size() == svdp.spectrum.size());
    for (std::size_t i = 0; i < schur.spectrum.size(); ++i) {
        CHECK(schur.spectrum[i].first ==
              doctest::Approx(svdp.spectrum[i].first).epsilon(1e-9));
        CHECK(schur.spectrum[i].second ==
              doctest::Approx(svdp.spectrum[i].second).epsilon(1e-12));
    }
    CHECK(schur.route == Route::schur_hard);
}

TEST_CASE("smooth Schur: hand-assembled A_z oracle at b = 0.5, s = 1") {
    const DenseMatrix theta =
        DenseMatrix::from_rows({{2, 3, 1}, {-1, 4, 2}, {3, -1, 5}});
    const DenseMatrix w =
        schur_project(az_eq_spec(), theta, 0.5, SchurMode::smoothed(1.0));

    // Upper-left 2×2: rotation-commuting half kept, complement damped by
    // exp(−λ_sum) = e^{−2}; the two mixed cells damp by e^{−1}; the scalar
    // cell passes.
    const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
    const DenseMatrix expect = DenseMatrix::from_rows(
        {{3.0 - e2, 2.0 + e2, e1 * 1.0},
         {-2.0 + e2, 3.0 + e2, e1 * 2.0},
         {e1 * 3.0, e1 * -1.0, 5.0}});
    CHECK(max_abs_diff(w, expect) <= 1e-12);
}

TEST_CASE("smooth Schur collapses to hard as s → 0⁺") {
    for (double b : {0.5, 1.5}) {
        const Projector hard = materialize(az_eq_spec(), b);
        const Projector smooth =
            materialize(az_eq_spec(), b, SchurMode::smoothed(1e-4));
        CHECK(frobenius_diff(hard.matrix, smooth.matrix) <= 1e-10);
        CHECK(smooth.route == Route::schur_smooth);
    }
}

TEST_CASE("commuting multi-generator composition is idempotent and exact at b→0") {
    DenseMatrix g1(6, 6), g2(6, 6);
    const DenseMatrix az = so3_generators()[2];
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            g1.at(i, j) = az.at(i, j);
            g2.at(3 + i, 3 + j) = az.at(i, j);
        }
    const GroupSpec spec = custom_spec({g1, g2}, kPi, "commuting", {g1, g2});

    for (double b : {0.5, 1.5}) {
        const DenseMatrix m = materialize(spec, b).matrix;
        CHECK(frobenius_diff(multiply(m, m), m) <= 1e-10);
    }
    // b → 0: composed projection equals the stacked-constraint SVD projector.
    const DenseMatrix schur0 = materialize(spec, 1e-9).matrix;
    const DenseMatrix svd0 = build_equivariant_projector(spec, 1e-9).matrix;
    CHECK(frobenius_diff(schur0, svd0) <= 1e-9);
}

TEST_CASE("non-commuting composition projects onto the last generator's commutant") {
    const GroupSpec spec = with_equal_output(so3_spec());
    const DenseMatrix w = schur_project(spec, random_theta(3, 3, 55), 1e-9);
    // Composition order is the catalog order, so the final projection step
    // guarantees commutation with A_z exactly; the full-intersection gap is
    // an approximation and not asserted.
    const DenseMatrix az = so3_generators()[2];
    CHECK(frobenius_diff(multiply(w, az), multiply(az, w)) <= 1e-9);
    CHECK(w.all_finite());
}

TEST_CASE("non-normal generators are rejected") {
    const DenseMatrix jordan = DenseMatrix::from_rows({{1, 1}, {0, 1}});
    const GroupSpec spec = custom_spec({jordan}, kPi, "jordan", {jordan});
    CHECK_THROWS_AS(schur_project(spec, random_theta(2, 2, 60), 1.0),
                    not_normal_error);
    CHECK_THROWS_AS(materialize(spec, 1.0), not_normal_error);
}

TEST_CASE("materialize size guard") {
    // 12×12 equivariance map → 144² materialization is fine; the guard is
    // d·d′ ≤ 10⁴, so a 120×120 map (14400) must throw.
    DenseMatrix big(120, 120);
    const GroupSpec spec = custom_spec({big}, kPi, "big", {big});
    CHECK_THROWS_AS(materialize(spec, 1.0), size_guard_error);
}

} // TEST_SUITE
