#include "equiproj/bench.hpp"

#include "equiproj/errors.hpp"
#include "equiproj/numerics.hpp"
#include "equiproj/projector_schur.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

namespace equiproj {

namespace {

constexpr double kCutoff = 0.5;
constexpr double kMinTimedSeconds = 5e-3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Median wall-clock time of op(), amplifying sub-threshold operations with an
// inner repetition loop so single-core timer noise stays small relative to
// the measurement.
template <typename Op>
double timed(Op&& op) {
    Clock::time_point t0 = Clock::now();
    op();
    double elapsed = seconds_since(t0);
    if (elapsed >= kMinTimedSeconds) return elapsed;
    const double floor_el = std::max(elapsed, 1e-7);
    const std::size_t inner = std::min<std::size_t>(
        10000, static_cast<std::size_t>(kMinTimedSeconds / floor_el) + 1);
    t0 = Clock::now();
    for (std::size_t i = 0; i < inner; ++i) op();
    return seconds_since(t0) / static_cast<double>(inner);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// The SVD route's timed work: build the stacked constraint, decompose it,
// and collect the retained right-singular basis at the cutoff.
DenseMatrix svd_route(const GroupSpec& spec) {
    const ConstraintMatrix constraint = build_constraint(spec);
    const SvdResult dec = svd(constraint.L);
    std::size_t kept = 0;
    for (double s : dec.sigma) {
        if (s < kCutoff) ++kept;
    }
    DenseMatrix basis(dec.V.rows, kept);
    for (std::size_t j = 0; j < kept; ++j) {
        for (std::size_t i = 0; i < dec.V.rows; ++i) {
            basis.at(i, j) = dec.V.at(i, j);
        }
    }
    return basis;
}

// The Schur route's timed work: one decomposition per representation side
// plus the block classification. Materialization is a cross-check, not part
// of the route, and is timed separately (not reported).
void schur_route(const GroupSpec& spec) {
    const SchurForm in = schur_normal(spec.generators_in.front());
    const SchurForm out = schur_normal(spec.generators_out.front());
    BlockPlan plan = classify_blocks(in, out, kCutoff);
    (void)plan;
}

} // namespace

std::vector<BenchRow> bench_decompositions(const std::vector<std::size_t>& sizes,
                                           std::size_t repeats) {
    if (repeats == 0) {
        throw invalid_input_error("bench_decompositions: repeats must be positive");
    }
    std::vector<BenchRow> rows;
    for (std::size_t k : sizes) {
        const GroupSpec spec = with_equal_output(cyclic_grid_spec(k, 4));

        std::vector<double> svd_times;
        std::vector<double> schur_times;
        DenseMatrix first_basis;
        for (std::size_t r = 0; r < repeats; ++r) {
            DenseMatrix basis;
            svd_times.push_back(timed([&] { basis = svd_route(spec); }));
            if (r == 0) first_basis = std::move(basis);
            schur_times.push_back(timed([&] { schur_route(spec); }));
        }

        // Untimed agreement gate: both routes must materialize the same
        // projector before the timing cell is trusted.
        const DenseMatrix b_svd =
            multiply(first_basis, transpose(first_basis));
        const Projector schur_proj = materialize(spec, kCutoff);
        const double agreement = frobenius_diff(schur_proj.matrix, b_svd);
        if (agreement > 1e-8) {
            throw consistency_error(
                "bench_decompositions: routes disagree at grid side " +
                std::to_string(k) + " (‖ΔB‖_F = " + std::to_string(agreement) +
                ")");
        }

        BenchRow row;
        row.grid_side = k;
        row.svd_seconds = median(svd_times);
        row.schur_seconds = median(schur_times);
        row.ratio = row.svd_seconds / row.schur_seconds;
        row.agreement_frobenius = agreement;
        rows.push_back(row);
    }
    return rows;
}

} // namespace equiproj
