#include "equiproj/io.hpp"

#include "equiproj/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace equiproj {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_dmat(std::ostream& os, const DenseMatrix& m) {
    os << "DMAT1\n" << m.rows << ' ' << m.cols << '\n';
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j > 0) os << ' ';
            os << format_real(m.at(i, j));
        }
        os << '\n';
    }
}

void write_dmat(const std::string& path, const DenseMatrix& m) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open for writing: " + path);
    write_dmat(f, m);
    f.flush();
    if (!f) throw io_error("write failed: " + path);
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw io_error("malformed DMAT1: " + what);
}

} // namespace

DenseMatrix read_dmat(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "DMAT1") malformed("missing magic");
    if (!std::getline(is, line)) malformed("missing shape line");
    std::istringstream shape(line);
    long long rows = -1;
    long long cols = -1;
    std::string extra;
    if (!(shape >> rows >> cols) || (shape >> extra) || rows < 0 || cols < 0) {
        malformed("shape line must be two nonnegative integers");
    }
    DenseMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (!std::getline(is, line)) malformed("truncated at row " + std::to_string(i));
        std::istringstream row(line);
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (!(row >> m.at(i, j))) {
                malformed("row " + std::to_string(i) + " needs " +
                          std::to_string(m.cols) + " reals");
            }
        }
        if (row >> extra) malformed("trailing tokens on row " + std::to_string(i));
    }
    return m;
}

DenseMatrix read_dmat(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open: " + path);
    return read_dmat(f);
}

} // namespace equiproj
