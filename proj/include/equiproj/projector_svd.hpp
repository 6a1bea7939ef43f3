#pragma once

#include "equiproj/dense_matrix.hpp"
#include "equiproj/groups.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equiproj {

// ---------------------------------------------------------------------------
// Weight-projection operators built from singular-value decompositions of the
// generator constraints. A projector maps raw parameters θ onto (softly)
// invariant weights w = B·θ or equivariant weights vec(W) = B·vec(Θ); the
// cutoff b controls how much symmetry breaking is tolerated.
// ---------------------------------------------------------------------------

enum class Route { svd_hard, svd_smooth, schur_hard, schur_smooth };

std::string route_name(Route route);

struct Projector {
    // d×d for invariance, (d·d′)×(d·d′) for equivariance.
    DenseMatrix matrix;
    Route route = Route::svd_hard;
    double cutoff_b = 0.0;
    std::optional<double> smooth_s;
    // (σ_i, γ_i) pairs in ascending σ order; γ is the retention weight the
    // projector applies along that singular direction (0/1 for hard routes).
    std::vector<std::pair<double, double>> spectrum;
    // Hard routes: columns form an orthonormal basis of the retained
    // subspace. Absent for smooth routes, where retention is graded.
    std::optional<DenseMatrix> basis;
    bool equivariant = false;
    std::size_t d = 0;       // input dimension
    std::size_t d_prime = 0; // output dimension (1 for invariance targets)
    // Bias companion for projected network layers: the d′×d′ soft-invariant
    // projector of the output space at the same cutoff. A non-invariant bias
    // breaks invariance of downstream readouts even when every weight matrix
    // is exactly projected, so training constrains the bias with this
    // operator. Absent when the cutoff retains the full output space (bias
    // unconstrained) and for invariance targets (trivial output action).
    std::optional<DenseMatrix> bias_core;
};

struct ConstraintMatrix {
    DenseMatrix L; // vertical stack of the per-generator constraints
    std::vector<DenseMatrix> per_generator;
    std::size_t d = 0;
    std::size_t d_prime = 0;
};

// B = Σ_{σ_i < b} u_i·u_iᵀ over left singular vectors of the horizontal
// concatenation [dρ(A_1)|…|dρ(A_k)]. Retention is strictly σ < b. The spec
// must carry input generators only.
Projector build_invariant_projector(const GroupSpec& spec, double b);

// Per-generator constraints L_i = dρ_X(A_i)ᵀ ⊗ I_{d′} − I_d ⊗ dρ_Y(A_i),
// stacked vertically. Acts on vec(W) for W of shape d′×d (column-major vec):
// L·vec(W) = stack of vec(W·dρ_X(A_i) − dρ_Y(A_i)·W).
ConstraintMatrix build_constraint(const GroupSpec& spec);

// B = Σ_{σ_i < b} v_i·v_iᵀ over right singular vectors of the stacked
// constraint. The spec must carry both input and output generators.
Projector build_equivariant_projector(const GroupSpec& spec, double b);

// w = B·θ. Invariance projectors accept a θ vector (d×1 or 1×d) or a matrix
// with d columns (applied row-wise); equivariance projectors accept a d′×d θ
// which is vec'd column-major internally.
DenseMatrix apply_projector(const Projector& p, const DenseMatrix& theta);

// Smooth cutoff in the same singular basis: γ_i = 1 for σ_i < b, otherwise
// exp(−σ_i²/s²). Dispatches to the invariant or equivariant constraint
// according to the spec.
Projector build_smooth(const GroupSpec& spec, double b, double s);

// Translates a softness fraction in [0,1] into a cutoff b for the given
// ascending σ spectrum. The exactly-symmetric core (σ ≤ 1e-10) is always
// retained; softness controls the fraction of the remaining directions, with
// the retained count extended across ties so b never lands on a σ value;
// the returned b is the midpoint between the last retained and the first
// dropped σ (σ_max + 1 when everything is retained, σ_min/2 when nothing is).
double softness_to_cutoff(const std::vector<double>& spectrum, double softness);

} // namespace equiproj
