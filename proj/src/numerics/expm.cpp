#include "equiproj/numerics.hpp"

#include "equiproj/errors.hpp"

#include <cmath>

namespace equiproj {

DenseMatrix expm(const DenseMatrix& x) {
    if (!x.square()) throw shape_error("expm: matrix is not square");
    if (!x.all_finite()) throw invalid_input_error("expm: non-finite entries");

    // Scaling and squaring: halve until the norm is small, run a fixed-degree
    // Taylor sum (degree 16 at ‖·‖_F ≤ 1/2 leaves a truncation error far
    // below 1e-12), then square back.
    const double nf = frobenius_norm(x);
    int squarings = 0;
    double scale = 1.0;
    while (nf * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }

    DenseMatrix a = scale * x;
    const std::size_t d = x.rows;
    DenseMatrix result = DenseMatrix::identity(d);
    DenseMatrix term = DenseMatrix::identity(d);
    for (int k = 1; k <= 16; ++k) {
        term = (1.0 / k) * multiply(term, a);
        result = result + term;
    }
    for (int s = 0; s < squarings; ++s) {
        result = multiply(result, result);
    }
    return result;
}

} // namespace equiproj
