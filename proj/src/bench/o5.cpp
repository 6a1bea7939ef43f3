#include "equiproj/bench.hpp"

#include "equiproj/errors.hpp"
#include "equiproj/numerics.hpp"
#include "train_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace equiproj {

namespace {

constexpr double kPi = 3.14159265358979323846;

DenseMatrix block_diag_copies(const DenseMatrix& a, std::size_t copies) {
    DenseMatrix out(a.rows * copies, a.cols * copies);
    for (std::size_t c = 0; c < copies; ++c) {
        for (std::size_t i = 0; i < a.rows; ++i) {
            for (std::size_t j = 0; j < a.cols; ++j) {
                out.at(c * a.rows + i, c * a.cols + j) = a.at(i, j);
            }
        }
    }
    return out;
}

// The so(5) generators acting on a direct sum of `copies` standard
// representations (block-diagonal replication of each basis element).
std::vector<DenseMatrix> stacked_so5(std::size_t copies) {
    std::vector<DenseMatrix> gens;
    for (const DenseMatrix& a : so_n_generators(5)) {
        gens.push_back(block_diag_copies(a, copies));
    }
    return gens;
}

double sum_abs_head(const std::vector<double>& v) {
    return std::abs(v[0]) + std::abs(v[1]);
}

double sum_abs_mid(const std::vector<double>& v) {
    return std::abs(v[2]) + std::abs(v[3]);
}

} // namespace

double o5_target(const std::vector<double>& x1, const std::vector<double>& x2,
                 double gamma, double epsilon_den) {
    if (x1.size() != 5 || x2.size() != 5) {
        throw shape_error("o5_target: both factors must live in R^5");
    }
    if (epsilon_den <= 0.0) {
        throw invalid_input_error("o5_target: epsilon_den must be positive");
    }
    const double n1 = norm2(x1);
    const double n2 = norm2(x2);
    if (n1 == 0.0 || n2 == 0.0) {
        throw degenerate_input_error(
            "o5_target: zero-norm factor (cosine term undefined)");
    }
    const double invariant =
        std::sin(n1) - 0.5 * n2 * n2 * n2 + dot(x1, x2) / (n1 * n2);
    const double breaking =
        (sum_abs_head(x1) + sum_abs_head(x2)) /
        (sum_abs_mid(x1) + sum_abs_mid(x2) + epsilon_den);
    return invariant + gamma * breaking;
}

O5Task make_o5_task(double gamma, double epsilon_den, std::size_t n_train,
                    std::size_t n_test, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw = [&]() {
        O5Sample s;
        s.x.resize(10);
        for (double& e : s.x) e = normal(rng);
        const std::vector<double> x1(s.x.begin(), s.x.begin() + 5);
        const std::vector<double> x2(s.x.begin() + 5, s.x.end());
        s.y = o5_target(x1, x2, gamma, epsilon_den);
        return s;
    };
    O5Task task;
    task.gamma = gamma;
    task.epsilon_den = epsilon_den;
    task.train.reserve(n_train);
    task.test.reserve(n_test);
    for (std::size_t i = 0; i < n_train; ++i) task.train.push_back(draw());
    for (std::size_t i = 0; i < n_test; ++i) task.test.push_back(draw());
    return task;
}

std::vector<std::optional<Projector>> o5_projectors(const O5Config& cfg) {
    std::vector<std::optional<Projector>> out(cfg.hidden_copies.size() + 1);
    if (!cfg.project) return out;

    std::size_t in_copies = 2; // input is x₁ ‖ x₂, two standard copies
    for (std::size_t l = 0; l < cfg.hidden_copies.size(); ++l) {
        const std::size_t out_copies = cfg.hidden_copies[l];
        GroupSpec spec = custom_spec(
            stacked_so5(in_copies), kPi,
            "so5x" + std::to_string(in_copies) + "to" +
                std::to_string(out_copies),
            stacked_so5(out_copies));
        const ConstraintMatrix constraint = build_constraint(spec);
        const double b =
            softness_to_cutoff(svd(constraint.L).sigma, cfg.hidden_softness);
        out[l] = build_equivariant_projector(spec, b);
        const GroupSpec out_side =
            custom_spec(stacked_so5(out_copies), kPi,
                        "so5x" + std::to_string(out_copies));
        out[l]->bias_core = detail::bias_companion(out_side, b);
        in_copies = out_copies;
    }

    GroupSpec readout = custom_spec(stacked_so5(in_copies), kPi,
                                    "so5x" + std::to_string(in_copies) +
                                        "readout");
    const double b_read = softness_to_cutoff(
        svd(hcat(readout.generators_in)).sigma, cfg.readout_softness);
    out.back() = build_invariant_projector(readout, b_read);
    return out;
}

TrainResult train_o5_mlp(const O5Task& task, const O5Config& cfg,
                         const std::vector<std::optional<Projector>>& projectors,
                         std::uint64_t seed) {
    if (task.train.empty() || task.test.empty()) {
        throw invalid_input_error("train_o5_mlp: empty dataset");
    }
    std::vector<std::size_t> dims = {10};
    for (std::size_t copies : cfg.hidden_copies) dims.push_back(5 * copies);
    dims.push_back(1);

    MLP net = build_mlp(dims, projectors, seed);
    // Distinct stream for shuffling so architecture changes do not silently
    // reuse initialization draws.
    Rng shuffle_rng(seed ^ 0x9e3779b97f4a7c15ULL);

    std::vector<std::size_t> order(task.train.size());
    std::iota(order.begin(), order.end(), 0);

    TrainResult result;
    const std::size_t batch = std::max<std::size_t>(1, cfg.batch_size);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t stop = std::min(order.size(), start + batch);
            GradientBundle acc = detail::zero_gradients(net);
            for (std::size_t i = start; i < stop; ++i) {
                const O5Sample& s = task.train[order[i]];
                detail::add_gradients(
                    acc, detail::mse_gradients_raw(net, s.x, {s.y}));
            }
            detail::sgd_apply_raw(net, acc,
                                  1.0 / static_cast<double>(stop - start),
                                  cfg.lr);
        }
        if (!detail::finite_network(net)) {
            result.diverged = true;
            result.relative_mse = std::numeric_limits<double>::infinity();
            result.final_train_mse = std::numeric_limits<double>::infinity();
            return result;
        }
    }

    double train_se = 0.0;
    for (const O5Sample& s : task.train) {
        const double e = net.forward(s.x)[0] - s.y;
        train_se += e * e;
    }
    result.final_train_mse = train_se / static_cast<double>(task.train.size());

    double mean_y = 0.0;
    for (const O5Sample& s : task.test) mean_y += s.y;
    mean_y /= static_cast<double>(task.test.size());
    double num = 0.0;
    double den = 0.0;
    for (const O5Sample& s : task.test) {
        const double e = net.forward(s.x)[0] - s.y;
        num += e * e;
        den += (s.y - mean_y) * (s.y - mean_y);
    }
    if (den == 0.0) {
        throw degenerate_input_error(
            "train_o5_mlp: constant test targets (relative MSE undefined)");
    }
    result.relative_mse = num / den;
    if (!std::isfinite(result.relative_mse)) result.diverged = true;
    return result;
}

} // namespace equiproj
