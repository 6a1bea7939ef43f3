#pragma once

#include "equiproj/dense_matrix.hpp"

#include <cstddef>
#include <vector>

namespace equiproj {

/**
 * Singular value decomposition m = U · diag(sigma) · Vᵀ.
 *
 * Module-wide convention: sigma is sorted ascending (0 ≤ σ₁ ≤ σ₂ ≤ ...), and
 * the leading min(rows, cols) columns of U and V are permuted with it. U is
 * rows×rows, V is cols×cols, both orthogonal; reconstruction holds to
 * 1e-10·‖m‖_F.
 */
struct SvdResult {
    DenseMatrix U;
    std::vector<double> sigma; // ascending, length min(rows, cols)
    DenseMatrix V;
};

/**
 * Real Schur form of a normal matrix: m = U · blockdiag(blocks) · Uᵀ with
 * orthogonal U and an ordered list of 1×1 and 2×2 diagonal blocks.
 *
 * Every 2×2 block has the canonical rotation-scaling form [[a, β], [−β, a]]
 * (complex eigenvalues a ± i|β|) and is emitted with β < 0, i.e. positive
 * lower-left entry, so equivalent blocks always share their orientation.
 * lambda is the block's spectral magnitude: |a| for 1×1, √(a²+β²) for 2×2.
 *
 * Blocks are ordered by descending lambda, then descending real part; U's
 * columns follow the block order.
 */
struct SchurBlock {
    std::size_t size = 1;  // 1 or 2
    double a = 0.0;        // real part (diagonal value)
    double beta = 0.0;     // off-diagonal of a 2×2 block (signed); 0 for 1×1
    double lambda = 0.0;   // magnitude of the largest eigenvalue

    DenseMatrix matrix() const; // the explicit 1×1 or 2×2 block
};

struct SchurForm {
    DenseMatrix U;
    std::vector<SchurBlock> blocks;

    std::size_t dim() const;
    /// blockdiag(blocks) as a dense matrix.
    DenseMatrix block_diagonal() const;
    /// Column offset of block k inside U.
    std::size_t block_offset(std::size_t k) const;
};

/**
 * Symmetric eigendecomposition helper: m = Q · diag(values) · Qᵀ with
 * values ascending and eigenvectors in the columns of Q. m is symmetrized
 * as (m + mᵀ)/2 before the solve.
 */
struct SymmetricEig {
    std::vector<double> values; // ascending
    DenseMatrix Q;              // eigenvectors in columns
};
SymmetricEig symmetric_eig(const DenseMatrix& m);

/// SVD with ascending singular values. Throws invalid_input_error on
/// non-finite entries.
SvdResult svd(const DenseMatrix& m);

/**
 * Real Schur form of a normal matrix (a square m with m·mᵀ = mᵀ·m within
 * ‖m mᵀ − mᵀ m‖_F ≤ 1e-8·‖m‖_F²). Computed by splitting eigenspaces of the
 * symmetric matrix mᵀm (shared invariant planes), separating them further by
 * the symmetric part of m, and canonicalizing the remaining skew action into
 * rotation blocks. Throws not_normal_error (message includes the commutator
 * norm) when the precondition fails.
 */
SchurForm schur_normal(const DenseMatrix& m);

/// Matrix exponential by scaling-and-squaring with a fixed-degree series;
/// relative truncation error ≤ 1e-12.
DenseMatrix expm(const DenseMatrix& m);

/// Kronecker product a ⊗ b.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/**
 * Column-major vectorization: vec stacks the columns of m top to bottom
 * (so vec(A·B·C) = (Cᵀ ⊗ A)·vec(B)); unvec inverts it.
 */
std::vector<double> vec(const DenseMatrix& m);
DenseMatrix unvec(const std::vector<double>& v, std::size_t rows,
                  std::size_t cols);

} // namespace equiproj
