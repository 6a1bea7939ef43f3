// equiproj: build soft-equivariance weight projectors, apply them, verify
// their first-order error bounds, and run the desk-scale benchmarks.
//
// Exit codes: 0 success, 2 input error, 3 precondition error, 4 verification
// failure, 5 internal consistency failure.

#include "equiproj/bench.hpp"
#include "equiproj/errors.hpp"
#include "equiproj/io.hpp"
#include "equiproj/metrics.hpp"
#include "equiproj/numerics.hpp"
#include "equiproj/projector_schur.hpp"
#include "equiproj/projector_svd.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace equiproj;

// Precondition violations detected by the CLI itself (exit code 3).
struct precondition_failure {
    std::string message;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("EQUIPROJ_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw invalid_input_error(
                "EQUIPROJ_SEED must be a nonnegative integer");
        }
    }
    return 1234;
}

// σ spectrum of the relevant constraint operator: the stacked equivariance
// constraint when an output representation is present, otherwise the
// horizontal generator concatenation.
std::vector<double> constraint_sigma(const GroupSpec& spec) {
    if (spec.has_output_rep()) {
        return svd(build_constraint(spec).L).sigma;
    }
    return svd(hcat(spec.generators_in)).sigma;
}

GroupSpec load_spec_for_kind(const std::string& path, const std::string& kind) {
    GroupSpec spec = read_group_spec(path);
    if (kind == "eq" && !spec.has_output_rep()) {
        spec = with_equal_output(std::move(spec));
    }
    if (kind == "inv") {
        spec.generators_out.clear();
    }
    return spec;
}

std::string sanitize_real(double v) {
    std::string s = format_real(v);
    for (char& c : s) {
        if (c == '.') c = 'p';
        if (c == '-') c = 'm';
        if (c == '+') c = ' ';
    }
    std::string out;
    for (char c : s) {
        if (c != ' ') out += c;
    }
    return out;
}

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// ---- build-projector --------------------------------------------------------

struct BuildArgs {
    std::string group_path;
    std::string kind;
    std::string route = "svd";
    double cutoff = 0.0;
    double softness = 0.0;
    bool has_cutoff = false;
    bool has_softness = false;
    double smooth_s = 0.0;
    bool has_smooth = false;
    std::string out_path;
    std::string meta_path;
};

void run_build_projector(const BuildArgs& a) {
    GroupSpec spec = load_spec_for_kind(a.group_path, a.kind);
    const std::vector<double> sigma = constraint_sigma(spec);
    const double b =
        a.has_cutoff ? a.cutoff : softness_to_cutoff(sigma, a.softness);

    Projector p;
    if (a.route == "svd") {
        if (a.has_smooth) {
            p = build_smooth(spec, b, a.smooth_s);
        } else if (spec.has_output_rep()) {
            p = build_equivariant_projector(spec, b);
        } else {
            p = build_invariant_projector(spec, b);
        }
    } else {
        const SchurMode mode =
            a.has_smooth ? SchurMode::smoothed(a.smooth_s) : SchurMode::hard();
        p = materialize(spec, b, mode);
    }

    write_dmat(a.out_path, p.matrix);
    if (!a.meta_path.empty()) {
        // Multi-generator Schur composition has no per-direction retention
        // list; record the constraint spectrum with the hard gate when it
        // applies, otherwise leave the spectrum to the projector itself.
        if (p.spectrum.empty() && !a.has_smooth) {
            for (double s : sigma) p.spectrum.emplace_back(s, s < b ? 1.0 : 0.0);
        }
        std::optional<double> softness;
        if (a.has_softness) softness = a.softness;
        write_projector_meta(a.meta_path, p, spec.label, a.kind, softness);
    }
}

// ---- project ------------------------------------------------------------------

struct ProjectArgs {
    std::string projector_path;
    std::string weights_path;
    std::string out_path;
};

void run_project(const ProjectArgs& a) {
    const DenseMatrix b = read_dmat(a.projector_path);
    const DenseMatrix w = read_dmat(a.weights_path);
    if (!b.square()) {
        throw shape_error("project: projector matrix must be square");
    }
    Projector p;
    p.matrix = b;
    if (b.rows == w.rows * w.cols) {
        p.equivariant = true;
        p.d = w.cols;
        p.d_prime = w.rows;
    } else if (b.rows == w.cols) {
        p.equivariant = false;
        p.d = w.cols;
        p.d_prime = 1;
    } else {
        throw shape_error(
            "project: projector side (" + std::to_string(b.rows) +
            ") matches neither rows·cols nor cols of the weights (" +
            std::to_string(w.rows) + "×" + std::to_string(w.cols) + ")");
    }
    write_dmat(a.out_path, apply_projector(p, w));
}

// ---- verify-bound ---------------------------------------------------------------

struct VerifyArgs {
    std::string group_path;
    std::string kind;
    std::string route = "svd";
    double cutoff = 0.0;
    std::size_t trials = 200;
    std::vector<double> t_values = {1e-3, 3e-3, 1e-2};
    std::uint64_t seed = 0;
    std::string out_path;
};

bool run_verify_bound(const VerifyArgs& a) {
    GroupSpec spec = load_spec_for_kind(a.group_path, a.kind);
    if (!spec.continuous) {
        throw precondition_failure{
            "verify-bound requires a continuous group (the first-order bound "
            "is stated in generator coordinates)"};
    }
    const auto t0 = std::chrono::steady_clock::now();

    Projector p;
    if (a.route == "svd") {
        p = spec.has_output_rep() ? build_equivariant_projector(spec, a.cutoff)
                                  : build_invariant_projector(spec, a.cutoff);
    } else {
        p = materialize(spec, a.cutoff);
    }

    const std::size_t d = spec.dim_in();
    const std::size_t dp = spec.has_output_rep() ? spec.dim_out() : 1;
    Rng rng(a.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    DenseMatrix theta(dp, d);
    for (double& e : theta.entries) e = normal(rng);
    const DenseMatrix w = apply_projector(p, theta);

    const BoundKind bound_kind =
        !spec.has_output_rep()
            ? BoundKind::invariant
            : (a.route == "svd" ? BoundKind::equivariant_svd
                                : BoundKind::equivariant_schur);
    const ErrorReport report = verify_first_order(
        spec, w, a.cutoff, bound_kind, a.trials, a.t_values, a.seed + 1);

    ReportFile file;
    file.command = "verify-bound";
    file.group = spec.label;
    file.route = route_name(p.route);
    file.cutoff_b = a.cutoff;
    file.spectrum = constraint_sigma(spec);
    file.max_relative_error = report.max_relative;
    file.bound_eta = report.bound_eta;
    file.fitted_quadratic = report.fitted_quadratic;
    file.pass = report.pass;
    file.timings.emplace_back("verify_seconds", elapsed_seconds(t0));
    const std::string text = report_to_json(file);
    if (a.out_path.empty()) {
        std::cout << text;
    } else {
        write_report(a.out_path, file);
    }
    return report.pass;
}

// ---- bench-decomp ---------------------------------------------------------------

struct BenchArgs {
    std::vector<std::size_t> sizes;
    std::size_t repeats = 3;
    std::string out_path;
};

void run_bench_decomp(const BenchArgs& a) {
    const std::vector<BenchRow> rows = bench_decompositions(a.sizes, a.repeats);
    std::vector<std::vector<std::string>> cells;
    for (const BenchRow& r : rows) {
        cells.push_back({std::to_string(r.grid_side), format_real(r.svd_seconds),
                         format_real(r.schur_seconds), format_real(r.ratio),
                         format_real(r.agreement_frobenius)});
    }
    write_csv(a.out_path, {"size", "svd_s", "schur_s", "ratio", "agreement_fro"},
              cells);
}

// ---- o5-bench --------------------------------------------------------------------

struct O5Args {
    double gamma = 0.0;
    double softness = 0.25;
    std::vector<std::uint64_t> seeds;
    std::uint64_t data_seed = 0;
    std::string out_path;
};

void run_o5_bench(const O5Args& a) {
    const O5Task task = make_o5_task(a.gamma, 0.1, 1024, 512, a.data_seed);

    O5Config projected;
    projected.hidden_softness = a.softness;
    projected.project = true;
    O5Config plain = projected;
    plain.project = false;

    const auto proj_projected = o5_projectors(projected);
    const auto proj_plain = o5_projectors(plain);

    std::vector<std::vector<std::string>> cells;
    for (std::uint64_t seed : a.seeds) {
        const TrainResult r_proj =
            train_o5_mlp(task, projected, proj_projected, seed);
        const TrainResult r_plain = train_o5_mlp(task, plain, proj_plain, seed);
        cells.push_back({format_real(a.gamma), format_real(a.softness),
                         std::to_string(seed), "projected",
                         format_real(r_proj.relative_mse)});
        cells.push_back({format_real(a.gamma), format_real(a.softness),
                         std::to_string(seed), "plain",
                         format_real(r_plain.relative_mse)});
    }
    write_csv(a.out_path, {"gamma", "softness", "seed", "variant", "rmse"},
              cells);
}

// ---- demo-grid --------------------------------------------------------------------

struct DemoArgs {
    std::size_t k = 5;
    std::size_t n_rot = 4;
    std::vector<double> softness;
    std::string out_dir;
    std::uint64_t seed = 0;
};

DenseMatrix filter_panel(const DenseMatrix& w, std::size_t k) {
    // Tile the first ≤ 9 rows of W as k×k filter images in a 3×3 grid with a
    // one-pixel separator, scaled together.
    const std::size_t n = std::min<std::size_t>(9, w.rows);
    const std::size_t tiles = n < 3 ? n : 3;
    const std::size_t tile_rows = (n + tiles - 1) / tiles;
    double lo = 0.0;
    bool first = true;
    for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t j = 0; j < w.cols; ++j) {
            if (first || w.at(f, j) < lo) lo = w.at(f, j);
            first = false;
        }
    }
    DenseMatrix panel(tile_rows * k + (tile_rows - 1),
                      tiles * k + (tiles - 1), lo);
    for (std::size_t f = 0; f < n; ++f) {
        const std::size_t tr = f / tiles;
        const std::size_t tc = f % tiles;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                panel.at(tr * (k + 1) + i, tc * (k + 1) + j) =
                    w.at(f, i * k + j);
            }
        }
    }
    return panel;
}

void run_demo_grid(const DemoArgs& a) {
    if (a.softness.empty()) {
        throw invalid_input_error("demo-grid: --softness list is empty");
    }
    std::filesystem::create_directories(a.out_dir);
    const GroupSpec spec = with_equal_output(cyclic_grid_spec(a.k, a.n_rot));
    const std::vector<double> sigma = constraint_sigma(spec);
    const std::size_t d = a.k * a.k;

    Rng rng(a.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    DenseMatrix theta(d, d);
    for (double& e : theta.entries) e = normal(rng);

    std::vector<DenseMatrix> rotations;
    for (std::size_t j = 0; j < a.n_rot; ++j) {
        rotations.push_back(spec.rho_in({static_cast<double>(j)}));
    }

    for (double f : a.softness) {
        const double b = softness_to_cutoff(sigma, f);
        const Projector p = build_equivariant_projector(spec, b);
        const DenseMatrix w = apply_projector(p, theta);
        const std::string tag = "_soft" + sanitize_real(f);

        write_pgm_with_sidecar(a.out_dir + "/filters" + tag + ".pgm",
                               filter_panel(w, a.k));

        for (std::size_t j = 0; j < a.n_rot; ++j) {
            const DenseMatrix lhs = multiply(w, rotations[j]);
            const DenseMatrix rhs = multiply(rotations[j], w);
            DenseMatrix err(d, d);
            for (std::size_t i = 0; i < err.entries.size(); ++i) {
                err.entries[i] = std::abs(lhs.entries[i] - rhs.entries[i]);
            }
            write_pgm_with_sidecar(a.out_dir + "/error_rot" +
                                       std::to_string(j) + tag + ".pgm",
                                   err);
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Soft group-equivariance weight projectors: construction, "
        "application, bound verification, and benchmarks"};
    app.require_subcommand(1);

    int exit_code = 0;

    try {
        const std::uint64_t seed0 = default_seed();

        BuildArgs build;
        CLI::App* bp = app.add_subcommand(
            "build-projector", "Build a projector matrix and metadata");
        bp->add_option("--group", build.group_path, "Group description JSON")
            ->required()
            ->check(CLI::ExistingFile);
        bp->add_option("--kind", build.kind, "inv (invariance) or eq (equivariance)")
            ->required()
            ->check(CLI::IsMember({"inv", "eq"}));
        bp->add_option("--route", build.route, "svd or schur")
            ->check(CLI::IsMember({"svd", "schur"}));
        CLI::Option* oc = bp->add_option("--cutoff", build.cutoff,
                                         "Cutoff b on deviation magnitudes");
        CLI::Option* os = bp->add_option("--softness", build.softness,
                                         "Softness fraction in [0,1]");
        oc->excludes(os);
        os->excludes(oc);
        bp->add_option("--smooth-s", build.smooth_s,
                       "Smooth cutoff scale s (default: hard cutoff)");
        bp->add_option("--out", build.out_path, "Output projector DMAT path")
            ->required();
        bp->add_option("--meta", build.meta_path, "Metadata JSON path");
        bp->callback([&] {
            build.has_cutoff = oc->count() > 0;
            build.has_softness = os->count() > 0;
            build.has_smooth = bp->count("--smooth-s") > 0;
            if (!build.has_cutoff && !build.has_softness) {
                throw CLI::RequiredError("--cutoff or --softness");
            }
            run_build_projector(build);
        });

        ProjectArgs project;
        CLI::App* pp = app.add_subcommand(
            "project", "Apply a projector to a weight matrix");
        pp->add_option("--projector", project.projector_path)
            ->required()
            ->check(CLI::ExistingFile);
        pp->add_option("--weights", project.weights_path)
            ->required()
            ->check(CLI::ExistingFile);
        pp->add_option("--out", project.out_path)->required();
        pp->callback([&] { run_project(project); });

        VerifyArgs verify;
        verify.seed = seed0;
        CLI::App* vp = app.add_subcommand(
            "verify-bound", "Monte-Carlo check of the first-order error bound");
        vp->add_option("--group", verify.group_path)
            ->required()
            ->check(CLI::ExistingFile);
        vp->add_option("--kind", verify.kind)
            ->required()
            ->check(CLI::IsMember({"inv", "eq"}));
        vp->add_option("--route", verify.route)
            ->check(CLI::IsMember({"svd", "schur"}));
        vp->add_option("--cutoff", verify.cutoff)->required();
        vp->add_option("--trials", verify.trials, "Trials per t value");
        vp->add_option("--t-values", verify.t_values, "Coordinate scales")
            ->delimiter(',');
        vp->add_option("--seed", verify.seed, "RNG seed");
        vp->add_option("--out", verify.out_path,
                       "Report JSON path (stdout when omitted)");
        vp->callback([&] {
            if (!run_verify_bound(verify)) exit_code = 4;
        });

        BenchArgs bench;
        CLI::App* np = app.add_subcommand(
            "bench-decomp", "Time the Schur route against the SVD route");
        np->add_option("--sizes", bench.sizes, "Grid sides, e.g. 4,6,8")
            ->required()
            ->delimiter(',');
        np->add_option("--repeats", bench.repeats, "Timing repeats (median)");
        np->add_option("--out", bench.out_path, "CSV output path")->required();
        np->callback([&] { run_bench_decomp(bench); });

        O5Args o5;
        o5.data_seed = seed0;
        CLI::App* op = app.add_subcommand(
            "o5-bench", "Synthetic O(5)-invariant regression benchmark");
        op->add_option("--gamma", o5.gamma, "Invariance-breaking strength")
            ->required();
        op->add_option("--softness", o5.softness, "Hidden-layer softness");
        op->add_option("--seeds", o5.seeds, "Training seeds, e.g. 1,2,3")
            ->required()
            ->delimiter(',');
        op->add_option("--seed", o5.data_seed, "Dataset seed");
        op->add_option("--out", o5.out_path, "CSV output path")->required();
        op->callback([&] { run_o5_bench(o5); });

        DemoArgs demo;
        demo.seed = seed0;
        CLI::App* dp = app.add_subcommand(
            "demo-grid",
            "Projected-filter panels and equivariance-error heatmaps");
        dp->add_option("--k", demo.k, "Grid side");
        dp->add_option("--n-rot", demo.n_rot, "Cyclic rotation order");
        dp->add_option("--softness", demo.softness, "Softness values, e.g. 1,0.5,0")
            ->required()
            ->delimiter(',');
        dp->add_option("--out-dir", demo.out_dir, "Output directory")->required();
        dp->add_option("--seed", demo.seed, "RNG seed");
        dp->callback([&] { run_demo_grid(demo); });

        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const precondition_failure& e) {
        std::cerr << "error: " << e.message << "\n";
        return 3;
    } catch (const not_normal_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const size_guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const consistency_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
    return exit_code;
}
