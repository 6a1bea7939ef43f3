#include "equiproj/numerics.hpp"

#include "equiproj/errors.hpp"

namespace equiproj {

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) {
            const double aij = a.at(i, j);
            for (std::size_t p = 0; p < b.rows; ++p) {
                for (std::size_t q = 0; q < b.cols; ++q) {
                    r.at(i * b.rows + p, j * b.cols + q) = aij * b.at(p, q);
                }
            }
        }
    }
    return r;
}

std::vector<double> vec(const DenseMatrix& m) {
    // Column-major stacking, so vec(A·B·C) = (Cᵀ ⊗ A)·vec(B).
    std::vector<double> v(m.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < m.cols; ++j) {
        for (std::size_t i = 0; i < m.rows; ++i) {
            v[k++] = m.at(i, j);
        }
    }
    return v;
}

DenseMatrix unvec(const std::vector<double>& v, std::size_t rows,
                  std::size_t cols) {
    if (v.size() != rows * cols) {
        throw shape_error("unvec: vector length " + std::to_string(v.size()) +
                          " does not match " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
    DenseMatrix m(rows, cols);
    std::size_t k = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            m.at(i, j) = v[k++];
        }
    }
    return m;
}

} // namespace equiproj
