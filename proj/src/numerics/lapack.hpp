#pragma once

// Thin wrappers over the two LAPACK routines this library delegates to.
// Everything here speaks row-major DenseMatrix at the boundary and hides the
// column-major copies.

#include "equiproj/dense_matrix.hpp"

#include <vector>

namespace equiproj::lapack {

/// Full SVD via dgesdd: a = U·diag(s)·Vᵀ with s DESCENDING (raw LAPACK
/// order); U is m×m, V is n×n, both row-major.
void gesdd_full(const DenseMatrix& a, DenseMatrix& U, std::vector<double>& s,
                DenseMatrix& V);

/// Symmetric eigendecomposition via dsyevd: a = Q·diag(w)·Qᵀ with w
/// ascending; eigenvectors in the columns of row-major Q. The input is used
/// as given (callers symmetrize first).
void syevd(const DenseMatrix& a, std::vector<double>& w, DenseMatrix& Q);

} // namespace equiproj::lapack
