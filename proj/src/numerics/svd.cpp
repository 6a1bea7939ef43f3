#include "equiproj/numerics.hpp"

#include "equiproj/errors.hpp"
#include "lapack.hpp"

#include <algorithm>
#include <string>

namespace equiproj {

namespace {

// Reverse the order of the first `count` columns of m in place.
void reverse_leading_columns(DenseMatrix& m, std::size_t count) {
    for (std::size_t j = 0; j < count / 2; ++j) {
        const std::size_t j2 = count - 1 - j;
        for (std::size_t i = 0; i < m.rows; ++i) {
            std::swap(m.at(i, j), m.at(i, j2));
        }
    }
}

} // namespace

SymmetricEig symmetric_eig(const DenseMatrix& m) {
    if (!m.square()) throw shape_error("symmetric_eig: matrix is not square");
    if (!m.all_finite()) {
        throw invalid_input_error("symmetric_eig: non-finite entries");
    }
    DenseMatrix sym = 0.5 * (m + transpose(m));
    SymmetricEig r;
    lapack::syevd(sym, r.values, r.Q);
    return r;
}

SvdResult svd(const DenseMatrix& m) {
    if (m.rows == 0 || m.cols == 0) throw shape_error("svd: empty matrix");
    if (!m.all_finite()) throw invalid_input_error("svd: non-finite entries");

    SvdResult r;
    std::vector<double> s;
    lapack::gesdd_full(m, r.U, s, r.V);

    // LAPACK returns descending singular values; the module convention is
    // ascending, with the paired singular vectors re-sorted alongside.
    std::reverse(s.begin(), s.end());
    reverse_leading_columns(r.U, s.size());
    reverse_leading_columns(r.V, s.size());
    r.sigma = std::move(s);
    return r;
}

} // namespace equiproj
