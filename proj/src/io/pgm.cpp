#include "equiproj/io.hpp"

#include "equiproj/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace equiproj {

void write_pgm_with_sidecar(const std::string& path, const DenseMatrix& image) {
    if (image.rows == 0 || image.cols == 0) {
        throw invalid_input_error("write_pgm: empty image");
    }
    if (!image.all_finite()) {
        throw invalid_input_error("write_pgm: non-finite pixels");
    }
    const double lo = *std::min_element(image.entries.begin(), image.entries.end());
    const double hi = *std::max_element(image.entries.begin(), image.entries.end());
    const double span = hi - lo;

    std::ofstream f(path);
    if (!f) throw io_error("cannot open for writing: " + path);
    f << "P2\n" << image.cols << ' ' << image.rows << "\n255\n";
    for (std::size_t i = 0; i < image.rows; ++i) {
        for (std::size_t j = 0; j < image.cols; ++j) {
            const double v = span > 0.0 ? (image.at(i, j) - lo) / span : 0.0;
            if (j > 0) f << ' ';
            f << std::lround(v * 255.0);
        }
        f << '\n';
    }
    f.flush();
    if (!f) throw io_error("write failed: " + path);

    nlohmann::ordered_json meta;
    meta["rows"] = image.rows;
    meta["cols"] = image.cols;
    meta["levels"] = 255;
    meta["min"] = nlohmann::ordered_json::parse(format_real(lo));
    meta["max"] = nlohmann::ordered_json::parse(format_real(hi));
    std::ofstream side(path + ".json");
    if (!side) throw io_error("cannot open for writing: " + path + ".json");
    side << meta.dump(2) << "\n";
    side.flush();
    if (!side) throw io_error("write failed: " + path + ".json");
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open for writing: " + path);
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j > 0) f << ',';
        f << header[j];
    }
    f << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw invalid_input_error("write_csv: row width != header width");
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) f << ',';
            f << row[j];
        }
        f << '\n';
    }
    f.flush();
    if (!f) throw io_error("write failed: " + path);
}

} // namespace equiproj
