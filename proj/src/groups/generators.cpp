#include "equiproj/groups.hpp"

#include "equiproj/errors.hpp"

#include <cmath>

namespace equiproj {

DenseMatrix so2_generator() {
    return DenseMatrix::from_rows({{0.0, -1.0}, {1.0, 0.0}});
}

std::vector<DenseMatrix> so3_generators() {
    DenseMatrix ax = DenseMatrix::from_rows(
        {{0.0, 0.0, 0.0}, {0.0, 0.0, -1.0}, {0.0, 1.0, 0.0}});
    DenseMatrix ay = DenseMatrix::from_rows(
        {{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}});
    DenseMatrix az = DenseMatrix::from_rows(
        {{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    return {ax, ay, az};
}

std::vector<DenseMatrix> so_n_generators(std::size_t n) {
    if (n < 2) {
        throw invalid_input_error("so_n_generators: n must be at least 2");
    }
    std::vector<DenseMatrix> gens;
    gens.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            DenseMatrix a(n, n, 0.0);
            a.at(i, j) = 1.0;
            a.at(j, i) = -1.0;
            gens.push_back(std::move(a));
        }
    }
    return gens;
}

DenseMatrix forward_difference(const DenseMatrix& rho_s) {
    if (!rho_s.square()) {
        throw shape_error("forward_difference: ρ(s) is not square");
    }
    DenseMatrix d = rho_s;
    for (std::size_t i = 0; i < d.rows; ++i) d.at(i, i) -= 1.0;
    return d;
}

DenseMatrix rotation2(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return DenseMatrix::from_rows({{c, -s}, {s, c}});
}

DenseMatrix circulant_shift(std::size_t n) {
    if (n == 0) throw invalid_input_error("circulant_shift: n must be positive");
    DenseMatrix s(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        s.at(i, (i + 1) % n) = 1.0;
    }
    return s;
}

} // namespace equiproj
