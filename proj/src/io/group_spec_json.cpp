#include "equiproj/io.hpp"

#include "equiproj/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace equiproj {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& what) {
    throw invalid_input_error("group spec: " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            reject("unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

std::size_t require_size(const json& params, const std::string& key) {
    if (!params.contains(key)) reject("params needs \"" + key + "\"");
    const json& v = params.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        reject("params." + key + " must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

DenseMatrix parse_matrix(const json& rows, const std::string& where) {
    if (!rows.is_array() || rows.empty()) {
        reject(where + " must be a nonempty array of rows");
    }
    const std::size_t n_rows = rows.size();
    std::size_t n_cols = 0;
    DenseMatrix m;
    for (std::size_t i = 0; i < n_rows; ++i) {
        const json& row = rows.at(i);
        if (!row.is_array() || row.empty()) {
            reject(where + " row " + std::to_string(i) + " must be a nonempty array");
        }
        if (i == 0) {
            n_cols = row.size();
            m = DenseMatrix(n_rows, n_cols);
        } else if (row.size() != n_cols) {
            reject(where + " rows have inconsistent lengths");
        }
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (!row.at(j).is_number()) {
                reject(where + " entries must be numbers");
            }
            m.at(i, j) = row.at(j).get<double>();
        }
    }
    return m;
}

std::vector<DenseMatrix> parse_matrices(const json& arr, const std::string& where) {
    if (!arr.is_array() || arr.empty()) {
        reject(where + " must be a nonempty array of matrices");
    }
    std::vector<DenseMatrix> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(parse_matrix(arr.at(i), where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

} // namespace

GroupSpec parse_group_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw io_error(std::string("group spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) reject("document must be a JSON object");
    check_keys(j, {"kind", "params", "r_g", "generators_in", "generators_out"},
               "the top-level object");
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        reject("\"kind\" (string) is required");
    }
    const std::string kind = j.at("kind").get<std::string>();
    const json params = j.value("params", json::object());
    if (!params.is_object()) reject("\"params\" must be an object");

    const bool has_custom_gens = j.contains("generators_in") || j.contains("generators_out");
    if (kind != "custom" && has_custom_gens) {
        reject("explicit generators are only valid with kind \"custom\"");
    }

    GroupSpec spec;
    if (kind == "so2") {
        check_keys(params, {}, "params");
        spec = so2_spec();
    } else if (kind == "so3") {
        check_keys(params, {}, "params");
        spec = so3_spec();
    } else if (kind == "so_n") {
        check_keys(params, {"n"}, "params");
        spec = so_n_spec(require_size(params, "n"));
    } else if (kind == "cyclic_grid") {
        check_keys(params, {"k", "n_rot"}, "params");
        spec = cyclic_grid_spec(require_size(params, "k"),
                                require_size(params, "n_rot"));
    } else if (kind == "cyclic_vec") {
        check_keys(params, {"n"}, "params");
        spec = cyclic_vec_spec(require_size(params, "n"));
    } else if (kind == "shift_circulant") {
        check_keys(params, {"n"}, "params");
        spec = shift_circulant_spec(require_size(params, "n"));
    } else if (kind == "custom") {
        check_keys(params, {}, "params");
        if (!j.contains("generators_in")) reject("custom kind requires generators_in");
        if (!j.contains("r_g")) reject("custom kind requires r_g");
        std::vector<DenseMatrix> gens_in =
            parse_matrices(j.at("generators_in"), "generators_in");
        std::vector<DenseMatrix> gens_out;
        if (j.contains("generators_out")) {
            gens_out = parse_matrices(j.at("generators_out"), "generators_out");
        }
        if (!j.at("r_g").is_number()) reject("r_g must be a number");
        spec = custom_spec(std::move(gens_in), j.at("r_g").get<double>(),
                           "custom", std::move(gens_out));
        return spec;
    } else {
        reject("unknown kind \"" + kind + "\"");
    }

    if (j.contains("r_g")) {
        if (!spec.continuous) {
            reject("r_g override is only valid for continuous kinds");
        }
        if (!j.at("r_g").is_number() || j.at("r_g").get<double>() <= 0.0) {
            reject("r_g must be a positive number");
        }
        spec.r_g = j.at("r_g").get<double>();
    }
    return spec;
}

GroupSpec read_group_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_group_spec(buf.str());
}

} // namespace equiproj
