#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace equiproj {

/**
 * Real dense matrix, row-major storage. The single numeric carrier used for
 * generators, weights, constraints, and projectors.
 *
 * Construction-time invariant: entries.size() == rows * cols. Finiteness is
 * checked by the operations that require it (decompositions), not here, so
 * intermediate arithmetic can be staged freely.
 */
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries; // row-major, length rows*cols

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0);
    DenseMatrix(std::size_t r, std::size_t c, std::vector<double> data);

    /// Build from nested braces: DenseMatrix::from_rows({{1,2},{3,4}}).
    static DenseMatrix from_rows(
        std::initializer_list<std::initializer_list<double>> data);
    static DenseMatrix identity(std::size_t n);
    /// Column vector (n×1) from a flat list.
    static DenseMatrix column(const std::vector<double>& v);

    double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const {
        return entries[i * cols + j];
    }

    bool square() const { return rows == cols; }
    std::size_t size() const { return rows * cols; }
    bool all_finite() const;
};

// ---- elementwise / structural helpers --------------------------------------

DenseMatrix transpose(const DenseMatrix& m);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& m);

/// Matrix product (uses the runtime-dispatched kernels).
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
/// y = m · x for a flat vector x of length m.cols.
std::vector<double> multiply(const DenseMatrix& m, const std::vector<double>& x);

/// Horizontal concatenation [a | b | ...]; all blocks share a row count.
DenseMatrix hcat(const std::vector<DenseMatrix>& blocks);
/// Vertical stack; all blocks share a column count.
DenseMatrix vstack(const std::vector<DenseMatrix>& blocks);

double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);
/// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
/// ‖a - b‖_F; shapes must agree.
double frobenius_diff(const DenseMatrix& a, const DenseMatrix& b);

double norm2(const std::vector<double>& v);
double dot(const std::vector<double>& a, const std::vector<double>& b);

} // namespace equiproj
