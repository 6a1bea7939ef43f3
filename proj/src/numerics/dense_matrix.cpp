#include "equiproj/dense_matrix.hpp"

#include "equiproj/errors.hpp"
#include "equiproj/kernels.hpp"

#include <cmath>
#include <string>

namespace equiproj {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b,
                        const char* op) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw shape_error(std::string(op) + ": shapes " +
                          std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                          " and " + std::to_string(b.rows) + "x" +
                          std::to_string(b.cols) + " do not match");
    }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c, double fill)
    : rows(r), cols(c), entries(r * c, fill) {}

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c, std::vector<double> data)
    : rows(r), cols(c), entries(std::move(data)) {
    if (entries.size() != rows * cols) {
        throw shape_error("DenseMatrix: " + std::to_string(entries.size()) +
                          " entries for a " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " matrix");
    }
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> data) {
    DenseMatrix m;
    m.rows = data.size();
    m.cols = m.rows ? data.begin()->size() : 0;
    m.entries.reserve(m.rows * m.cols);
    for (const auto& row : data) {
        if (row.size() != m.cols) {
            throw shape_error("DenseMatrix::from_rows: ragged rows");
        }
        m.entries.insert(m.entries.end(), row.begin(), row.end());
    }
    return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::column(const std::vector<double>& v) {
    return DenseMatrix(v.size(), 1, v);
}

bool DenseMatrix::all_finite() const {
    for (double e : entries) {
        if (!std::isfinite(e)) return false;
    }
    return true;
}

DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    }
    return t;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "operator+");
    DenseMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        r.entries[i] += b.entries[i];
    }
    return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "operator-");
    DenseMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        r.entries[i] -= b.entries[i];
    }
    return r;
}

DenseMatrix operator*(double s, const DenseMatrix& m) {
    DenseMatrix r = m;
    kernels::scale(s, r.entries.data(), r.entries.size());
    return r;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) {
        throw shape_error("multiply: inner dimensions " +
                          std::to_string(a.cols) + " and " +
                          std::to_string(b.rows) + " differ");
    }
    DenseMatrix c(a.rows, b.cols);
    kernels::gemm(a.rows, a.cols, b.cols, a.entries.data(), b.entries.data(),
                  c.entries.data());
    return c;
}

std::vector<double> multiply(const DenseMatrix& m,
                             const std::vector<double>& x) {
    if (m.cols != x.size()) {
        throw shape_error("multiply: matrix has " + std::to_string(m.cols) +
                          " columns, vector has " + std::to_string(x.size()) +
                          " entries");
    }
    std::vector<double> y(m.rows);
    kernels::gemv(m.rows, m.cols, m.entries.data(), x.data(), y.data());
    return y;
}

DenseMatrix hcat(const std::vector<DenseMatrix>& blocks) {
    if (blocks.empty()) throw shape_error("hcat: no blocks");
    std::size_t rows = blocks.front().rows, cols = 0;
    for (const auto& b : blocks) {
        if (b.rows != rows) throw shape_error("hcat: row counts differ");
        cols += b.cols;
    }
    DenseMatrix r(rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < b.cols; ++j) {
                r.at(i, off + j) = b.at(i, j);
            }
        }
        off += b.cols;
    }
    return r;
}

DenseMatrix vstack(const std::vector<DenseMatrix>& blocks) {
    if (blocks.empty()) throw shape_error("vstack: no blocks");
    std::size_t cols = blocks.front().cols, rows = 0;
    for (const auto& b : blocks) {
        if (b.cols != cols) throw shape_error("vstack: column counts differ");
        rows += b.rows;
    }
    DenseMatrix r(rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                r.at(off + i, j) = b.at(i, j);
            }
        }
        off += b.rows;
    }
    return r;
}

double frobenius_norm(const DenseMatrix& m) {
    return std::sqrt(kernels::dot(m.entries.data(), m.entries.data(),
                                  m.entries.size()));
}

double max_abs(const DenseMatrix& m) {
    double r = 0.0;
    for (double e : m.entries) r = std::max(r, std::abs(e));
    return r;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double r = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        r = std::max(r, std::abs(a.entries[i] - b.entries[i]));
    }
    return r;
}

double frobenius_diff(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "frobenius_diff");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const double d = a.entries[i] - b.entries[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double norm2(const std::vector<double>& v) {
    return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw shape_error("dot: lengths differ");
    return kernels::dot(a.data(), b.data(), a.size());
}

} // namespace equiproj
