#include "lapack.hpp"

#include "equiproj/errors.hpp"

#include <string>
#include <vector>

extern "C" {
void dgesdd_(const char* jobz, const int* m, const int* n, double* a,
             const int* lda, double* s, double* u, const int* ldu, double* vt,
             const int* ldvt, double* work, const int* lwork, int* iwork,
             int* info);
void dsyevd_(const char* jobz, const char* uplo, const int* n, double* a,
             const int* lda, double* w, double* work, const int* lwork,
             int* iwork, const int* liwork, int* info);
}

namespace equiproj::lapack {

namespace {

// Row-major DenseMatrix -> column-major buffer.
std::vector<double> to_col_major(const DenseMatrix& a) {
    std::vector<double> cm(a.rows * a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) {
            cm[j * a.rows + i] = a.entries[i * a.cols + j];
        }
    }
    return cm;
}

// Column-major buffer (r×c) -> row-major DenseMatrix.
DenseMatrix from_col_major(const std::vector<double>& cm, std::size_t r,
                           std::size_t c) {
    DenseMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            a.entries[i * c + j] = cm[j * r + i];
        }
    }
    return a;
}

} // namespace

void gesdd_full(const DenseMatrix& a, DenseMatrix& U, std::vector<double>& s,
                DenseMatrix& V) {
    const int m = static_cast<int>(a.rows);
    const int n = static_cast<int>(a.cols);
    const int mn = std::min(m, n);

    std::vector<double> acm = to_col_major(a);
    std::vector<double> ucm(static_cast<std::size_t>(m) * m);
    std::vector<double> vtcm(static_cast<std::size_t>(n) * n);
    s.assign(mn, 0.0);
    std::vector<int> iwork(8 * std::max(1, mn));

    int info = 0;
    int lwork = -1;
    double wquery = 0.0;
    dgesdd_("A", &m, &n, acm.data(), &m, s.data(), ucm.data(), &m, vtcm.data(),
            &n, &wquery, &lwork, iwork.data(), &info);
    if (info != 0) {
        throw error("dgesdd workspace query failed, info=" +
                    std::to_string(info));
    }
    lwork = static_cast<int>(wquery);
    std::vector<double> work(static_cast<std::size_t>(lwork));
    dgesdd_("A", &m, &n, acm.data(), &m, s.data(), ucm.data(), &m, vtcm.data(),
            &n, work.data(), &lwork, iwork.data(), &info);
    if (info != 0) {
        throw error("dgesdd failed to converge, info=" + std::to_string(info));
    }

    acm.clear();
    acm.shrink_to_fit();
    work.clear();
    work.shrink_to_fit();

    U = from_col_major(ucm, a.rows, a.rows);
    ucm.clear();
    ucm.shrink_to_fit();
    // vtcm holds Vᵀ column-major, i.e. V row-major.
    V = DenseMatrix(a.cols, a.cols, std::move(vtcm));
}

void syevd(const DenseMatrix& a, std::vector<double>& w, DenseMatrix& Q) {
    const int n = static_cast<int>(a.rows);
    std::vector<double> acm = to_col_major(a);
    w.assign(a.rows, 0.0);

    int info = 0;
    int lwork = -1, liwork = -1;
    double wquery = 0.0;
    int iwquery = 0;
    dsyevd_("V", "L", &n, acm.data(), &n, w.data(), &wquery, &lwork, &iwquery,
            &liwork, &info);
    if (info != 0) {
        throw error("dsyevd workspace query failed, info=" +
                    std::to_string(info));
    }
    lwork = static_cast<int>(wquery);
    liwork = iwquery;
    std::vector<double> work(static_cast<std::size_t>(std::max(1, lwork)));
    std::vector<int> iwork(static_cast<std::size_t>(std::max(1, liwork)));
    dsyevd_("V", "L", &n, acm.data(), &n, w.data(), work.data(), &lwork,
            iwork.data(), &liwork, &info);
    if (info != 0) {
        throw error("dsyevd failed to converge, info=" + std::to_string(info));
    }
    Q = from_col_major(acm, a.rows, a.rows);
}

} // namespace equiproj::lapack
