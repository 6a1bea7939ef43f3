#pragma once

#include "equiproj/dense_matrix.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace equiproj {

// ---------------------------------------------------------------------------
// Group catalog: Lie-algebra generators for the continuous rotation groups,
// forward-difference generators for discrete cyclic actions, element sampling,
// and the discrete first-order (Taylor) expansion check.
// ---------------------------------------------------------------------------

enum class GroupKind {
    so2,
    so3,
    so_n,
    cyclic_grid,
    shift_circulant,
    cyclic_vec,
    custom,
};

enum class Interp { nearest, bilinear };

std::string group_kind_name(GroupKind kind);

// A sampled (or constructed) group element: the representing matrix on the
// input space, optionally the matrix on a distinct output space, and the
// coordinates that produced it — generator coefficients t_i for continuous
// groups, the word count k (element r^k) for cyclic groups.
struct GroupElement {
    DenseMatrix matrix_in;
    std::optional<DenseMatrix> matrix_out;
    std::vector<double> coords;
};

// Static description of a symmetry group together with its representation(s).
//
//  - Continuous kinds carry Lie-algebra generators dρ(A_i); elements are
//    exp(Σ t_i A_i) with |t_i| ≤ r_g.
//  - Discrete kinds carry forward-difference generators Δ(s) = ρ(s) − I for
//    the single cyclic generator s = r; elements are the words r^k, k ∈
//    [0, cyclic_order), and coords holds {k}.
//  - generators_out empty means the output transforms trivially (invariance);
//    non-empty means a genuine output representation (equivariance).
struct GroupSpec {
    GroupKind kind = GroupKind::custom;
    bool continuous = true;
    std::string label;
    std::vector<DenseMatrix> generators_in;
    std::vector<DenseMatrix> generators_out;
    double r_g = 1.0;
    std::size_t cyclic_order = 0; // discrete kinds only
    std::size_t grid_side = 0;    // cyclic_grid only
    Interp grid_interp = Interp::nearest;

    std::size_t n_g() const { return generators_in.size(); }
    std::size_t dim_in() const;
    std::size_t dim_out() const; // requires has_output_rep()
    bool has_output_rep() const { return !generators_out.empty(); }

    // Representing matrices at explicit coordinates (t for continuous, {k}
    // for discrete).
    DenseMatrix rho_in(const std::vector<double>& coords) const;
    DenseMatrix rho_out(const std::vector<double>& coords) const;
};

// --- generator constructions ----------------------------------------------

// [[0,−1],[1,0]], the generator of 2D rotations.
DenseMatrix so2_generator();

// The three infinitesimal rotations about the coordinate axes, in the order
// A_x, A_y, A_z.
std::vector<DenseMatrix> so3_generators();

// Skew-symmetric basis E_ij − E_ji for i < j in lexicographic order, each
// with ⟨A,A⟩_F = 2. Requires n ≥ 2.
std::vector<DenseMatrix> so_n_generators(std::size_t n);

// ρ(s) − I.
DenseMatrix forward_difference(const DenseMatrix& rho_s);

// 2D rotation by theta.
DenseMatrix rotation2(double theta);

// Circulant shift on ℝⁿ: (Sx)_i = x_{(i+1) mod n}.
DenseMatrix circulant_shift(std::size_t n);

// k²×k² matrix rotating a k×k image (row-major pixels) by theta about the
// geometric center (k−1)/2, with zero padding outside the grid. Row i holds
// the interpolation weights of the rotated pre-image of pixel i. For theta a
// multiple of 90° the result is an exact permutation matrix under either
// interpolation mode.
DenseMatrix grid_rotation_rep(std::size_t k, double theta, Interp interp);

// --- catalog factories ------------------------------------------------------

GroupSpec so2_spec();
GroupSpec so3_spec();
GroupSpec so_n_spec(std::size_t n);
// C_{n_rot} acting on k×k images by grid rotation; exact permutations for
// n_rot ∈ {1,2,4} (nearest), bilinear interpolation otherwise.
GroupSpec cyclic_grid_spec(std::size_t side, std::size_t n_rot);
// C_n acting on ℝ² by rotation through multiples of 2π/n.
GroupSpec cyclic_vec_spec(std::size_t n);
// C_n acting on ℝⁿ by circulant shift.
GroupSpec shift_circulant_spec(std::size_t n);
// Custom continuous spec from explicit generators; r_g must be supplied.
GroupSpec custom_spec(std::vector<DenseMatrix> generators_in, double r_g,
                      std::string label = "custom",
                      std::vector<DenseMatrix> generators_out = {});

// Copies the input representation to the output side, turning an invariance
// spec into the equal-representation equivariance spec (W acting d → d).
GroupSpec with_equal_output(GroupSpec spec);

// --- sampling ----------------------------------------------------------------

// Restriction of the sampling domain for sample_element_in.
//  - Continuous specs: per-coordinate closed intervals (one interval
//    broadcasts to all coordinates); shape `ball` draws coordinates uniformly
//    from the radius-r ball instead of the cube.
//  - Discrete specs: an explicit set of word counts.
struct Subset {
    enum class Shape { cube, ball };
    Shape shape = Shape::cube;
    std::vector<std::pair<double, double>> intervals;
    std::vector<std::size_t> words;

    static Subset cube(double radius);
    static Subset interval(double lo, double hi);
    static Subset point(std::vector<double> coords);
    static Subset ball(double radius);
    static Subset word_set(std::vector<std::size_t> words);
};

using Rng = std::mt19937_64;

// Element at explicit coordinates (t_i or {k}).
GroupElement element_at(const GroupSpec& spec, std::vector<double> coords);

// Natural sampling for each catalog entry: so2 draws the angle uniformly in
// [−r_g, r_g]; so3 draws from the rotation-invariant (Haar) distribution via
// axis–angle; higher so_n and custom specs draw each coordinate uniformly in
// [−r_g, r_g]; discrete specs draw a word uniformly.
GroupElement sample_element(const GroupSpec& spec, Rng& rng);

// Sampling restricted to a subset of the group.
GroupElement sample_element_in(const GroupSpec& spec, const Subset& subset,
                               Rng& rng);

// --- discrete first-order expansion -----------------------------------------

// Result of checking the first-order word expansion f̂(g) = f(e) +
// Σ n_{s_i} Δ_{s_i} f(e) against the pointwise bound 2h·d_𝕊(e,g).
struct TaylorCheck {
    double max_error = 0.0;    // max_g |f(g) − f̂(g)|
    double max_bound = 0.0;    // max_g 2h·d_𝕊(e,g)
    double lipschitz = 0.0;    // h used for the bound
    bool pointwise_ok = true;  // |f(g) − f̂(g)| ≤ 2h·d_𝕊(e,g) at every g
};

// f is tabulated over the canonical words r^k in order k = 0..n−1. When h is
// not supplied it is estimated as the largest single-generator step
// |f(r^{k+1}) − f(r^k)| (including the wrap-around step). The word metric is
// directed: d(e, r^k) = k.
TaylorCheck discrete_taylor_check(const std::vector<double>& f,
                                  const GroupSpec& spec,
                                  std::optional<double> h = std::nullopt);

} // namespace equiproj
