#pragma once

#include "equiproj/dense_matrix.hpp"
#include "equiproj/groups.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace equiproj {

// ---------------------------------------------------------------------------
// Equivariance residuals, the relative (scale-free) equivariance metric, the
// first-order error bounds for projected weights, and the classifier-style
// invariance metrics used by the benchmarks.
// ---------------------------------------------------------------------------

// Which bound coefficient applies to a verified layer.
enum class BoundKind { invariant, equivariant_svd, equivariant_schur };

struct ErrorSample {
    GroupElement element;
    double t_total = 0.0; // Σ|t_i| of the sampled generator coefficients
    double residual_norm = 0.0;
    double relative_error = 0.0;
};

struct ErrorReport {
    std::vector<ErrorSample> samples;
    double max_relative = 0.0;
    double bound_eta = 0.0;   // full-group coefficient: slope·√n_G·r_G (by kind)
    double bound_slope = 0.0; // per-sample first-order slope used in the check
    // Least-squares fit of relative_error ≈ α·t + c·t² over the samples;
    // c estimates the quadratic remainder coefficient and is reported, never
    // asserted.
    double first_order_slope = 0.0;
    double fitted_quadratic = 0.0;
    bool pass = true;
};

// W·ρ_X(g)·x − ρ_Y(g)·W·x. When the element carries no output matrix the
// output transforms trivially (invariance, ρ_Y = I).
std::vector<double> residual(const DenseMatrix& w, const GroupElement& g,
                             const std::vector<double>& x);

// ‖residual‖₂ / (‖W‖_F·‖x‖₂); for a linear layer the Jacobian Frobenius norm
// is ‖W‖_F, making the metric invariant to rescaling W or x.
double relative_error(const DenseMatrix& w, const GroupElement& g,
                      const std::vector<double>& x);

// First-order bound coefficient over the whole group: b·√n_G·r_G for
// invariance and the Schur route, b·√(n_G·d′)·r_G for the SVD equivariance
// route. The quadratic remainder is reported separately (fitted_quadratic),
// never folded in. Continuous specs only.
double bound_eta(const GroupSpec& spec, double b, BoundKind kind,
                 std::size_t d_prime);

// Samples small generator coefficients t·u (u per-coordinate uniform in
// [−1,1]) and random unit inputs, and checks
//   relative_error ≤ slope·Σ|t_i|·1.05 + 1e-8
// per sample, with slope = b (invariant / Schur) or b·√d′ (SVD
// equivariance). W must come from the matching hard projector at cutoff b.
ErrorReport verify_first_order(const GroupSpec& spec, const DenseMatrix& w,
                               double b, BoundKind kind, std::size_t trials,
                               const std::vector<double>& t_values,
                               std::uint64_t seed);

// Convenience overload with the default scales {1e-3, 3e-3, 1e-2}.
ErrorReport verify_first_order(const GroupSpec& spec, const DenseMatrix& w,
                               double b, BoundKind kind, std::size_t trials,
                               std::uint64_t seed);

// Σ p_i·log(p_i/q_i) with 0·log0 = 0 and q floored at 1e-12. Both inputs
// must be probability vectors (entries ≥ 0, sums within 1e-9 of 1).
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

std::vector<double> softmax(const std::vector<double>& logits);

// Model output as a function from an input vector to logits.
using LogitsFn = std::function<std::vector<double>(const std::vector<double>&)>;

// Mean KL divergence between class probabilities on original and transformed
// inputs: E_{x,g} KL[softmax F(x) ‖ softmax F(ρ_X(g)x)] over n_pairs sampled
// pairs, with g drawn from the given subset of the group.
double invariance_error(const LogitsFn& logits,
                        const std::vector<std::vector<double>>& inputs,
                        const GroupSpec& spec, const Subset& subset,
                        std::size_t n_pairs, Rng& rng);

// Geometric mean of clean and augmented accuracy, both in [0,1].
double combined_accuracy(double acc, double a_acc);

} // namespace equiproj
