#include "equiproj/io.hpp"

#include "equiproj/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>

namespace equiproj {

namespace {

using ordered_json = nlohmann::ordered_json;

// Serialize reals through the shared 17-significant-digit renderer so JSON
// output is byte-stable and survives a round trip exactly. JSON has no
// non-finite literals; those become null.
ordered_json real(double v) {
    if (!std::isfinite(v)) return ordered_json();
    return ordered_json::parse(format_real(v));
}

ordered_json real_list(const std::vector<double>& vs) {
    ordered_json arr = ordered_json::array();
    for (double v : vs) arr.push_back(real(v));
    return arr;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open for writing: " + path);
    f << text;
    f.flush();
    if (!f) throw io_error("write failed: " + path);
}

} // namespace

std::string report_to_json(const ReportFile& report) {
    ordered_json j;
    j["command"] = report.command;
    j["group"] = report.group;
    j["route"] = report.route;
    j["cutoff_b"] = real(report.cutoff_b);
    if (report.softness) j["softness"] = real(*report.softness);
    j["spectrum"] = real_list(report.spectrum);
    j["max_relative_error"] = real(report.max_relative_error);
    j["bound_eta"] = real(report.bound_eta);
    j["fitted_quadratic"] = real(report.fitted_quadratic);
    j["pass"] = report.pass;
    if (!report.timings.empty()) {
        ordered_json t;
        for (const auto& [name, seconds] : report.timings) t[name] = real(seconds);
        j["timings"] = t;
    }
    return j.dump(2) + "\n";
}

void write_report(const std::string& path, const ReportFile& report) {
    write_text(path, report_to_json(report));
}

std::string projector_meta_json(const Projector& p, const std::string& group,
                                const std::string& kind,
                                std::optional<double> softness) {
    ordered_json j;
    j["group"] = group;
    j["kind"] = kind;
    j["route"] = route_name(p.route);
    j["cutoff_b"] = real(p.cutoff_b);
    if (softness) j["softness"] = real(*softness);
    if (p.smooth_s) j["smooth_s"] = real(*p.smooth_s);
    j["d"] = p.d;
    j["d_prime"] = p.d_prime;
    std::vector<double> sigmas;
    std::vector<double> gammas;
    for (const auto& [sigma, gamma] : p.spectrum) {
        sigmas.push_back(sigma);
        gammas.push_back(gamma);
    }
    j["spectrum"] = real_list(sigmas);
    j["retention"] = real_list(gammas);
    return j.dump(2) + "\n";
}

void write_projector_meta(const std::string& path, const Projector& p,
                          const std::string& group, const std::string& kind,
                          std::optional<double> softness) {
    write_text(path, projector_meta_json(p, group, kind, softness));
}

} // namespace equiproj
