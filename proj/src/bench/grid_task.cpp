#include "equiproj/bench.hpp"

#include "equiproj/errors.hpp"
#include "equiproj/numerics.hpp"
#include "train_util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace equiproj {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

// Fixed binary template for one class: deterministic in (k, class index) so
// train and test splits built from different rng streams share the same
// underlying patterns.
std::vector<double> class_template(std::size_t k, std::size_t cls) {
    Rng rng(0x5eedULL * (k + 1) + 0x9e3779b9ULL * (cls + 1));
    std::bernoulli_distribution bit(0.5);
    std::vector<double> t(k * k);
    for (double& p : t) p = bit(rng) ? 1.0 : 0.0;
    return t;
}

std::vector<DenseMatrix> quarter_turns(std::size_t k) {
    std::vector<DenseMatrix> rots;
    for (std::size_t j = 0; j < 4; ++j) {
        rots.push_back(grid_rotation_rep(
            k, static_cast<double>(j) * kHalfPi, Interp::nearest));
    }
    return rots;
}

} // namespace

GridDataset grid_task(std::size_t k, std::size_t n_classes,
                      std::size_t n_samples, double noise_sigma, Rng& rng) {
    if (k == 0 || n_classes == 0) {
        throw invalid_input_error("grid_task: k and n_classes must be positive");
    }
    if (noise_sigma < 0.0) {
        throw invalid_input_error("grid_task: noise_sigma must be nonnegative");
    }
    std::vector<std::vector<double>> templates;
    for (std::size_t c = 0; c < n_classes; ++c) {
        templates.push_back(class_template(k, c));
    }
    const std::vector<DenseMatrix> rots = quarter_turns(k);

    GridDataset data;
    data.k = k;
    data.n_classes = n_classes;
    data.inputs.reserve(n_samples);
    data.labels.reserve(n_samples);
    std::uniform_int_distribution<std::size_t> pick_rot(0, 3);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::size_t label = i % n_classes; // balanced round-robin
        std::vector<double> x = multiply(rots[pick_rot(rng)], templates[label]);
        for (double& p : x) p += noise_sigma * noise(rng);
        data.inputs.push_back(std::move(x));
        data.labels.push_back(label);
    }
    return data;
}

std::vector<std::optional<Projector>> grid_projectors(const GridConfig& cfg) {
    std::vector<std::optional<Projector>> out(2);
    if (!cfg.project) return out;
    const std::size_t d = cfg.k * cfg.k;
    if (cfg.hidden != d) {
        throw invalid_input_error(
            "grid_projectors: the equivariant hidden layer needs hidden == k² "
            "(both sides carry the grid representation)");
    }
    GroupSpec eq_spec = with_equal_output(cyclic_grid_spec(cfg.k, 4));
    const ConstraintMatrix constraint = build_constraint(eq_spec);
    const double b_eq =
        softness_to_cutoff(svd(constraint.L).sigma, cfg.softness);
    out[0] = build_equivariant_projector(eq_spec, b_eq);
    out[0]->bias_core =
        detail::bias_companion(cyclic_grid_spec(cfg.k, 4), b_eq);

    GroupSpec inv_spec = cyclic_grid_spec(cfg.k, 4);
    const double b_inv = softness_to_cutoff(
        svd(hcat(inv_spec.generators_in)).sigma, cfg.softness);
    out[1] = build_invariant_projector(inv_spec, b_inv);
    return out;
}

GridResult train_grid_classifier(
    const GridDataset& train_set, const GridDataset& test_set,
    const GridConfig& cfg,
    const std::vector<std::optional<Projector>>& projectors,
    std::uint64_t seed) {
    if (train_set.inputs.empty() || test_set.inputs.empty()) {
        throw invalid_input_error("train_grid_classifier: empty dataset");
    }
    if (train_set.k != cfg.k || test_set.k != cfg.k) {
        throw invalid_input_error("train_grid_classifier: dataset/config k mismatch");
    }
    const std::size_t d = cfg.k * cfg.k;
    MLP net = build_mlp({d, cfg.hidden, cfg.n_classes}, projectors, seed);
    Rng shuffle_rng(seed ^ 0x9e3779b97f4a7c15ULL);

    std::vector<std::size_t> order(train_set.inputs.size());
    std::iota(order.begin(), order.end(), 0);

    GridResult result;
    const std::size_t batch = std::max<std::size_t>(1, cfg.batch_size);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t stop = std::min(order.size(), start + batch);
            GradientBundle acc = detail::zero_gradients(net);
            for (std::size_t i = start; i < stop; ++i) {
                detail::add_gradients(
                    acc, detail::ce_gradients_raw(net, train_set.inputs[order[i]],
                                                  train_set.labels[order[i]]));
            }
            detail::sgd_apply_raw(net, acc,
                                  1.0 / static_cast<double>(stop - start),
                                  cfg.lr);
        }
        if (!detail::finite_network(net)) {
            result.diverged = true;
            return result;
        }
    }

    auto predict = [&](const std::vector<double>& x) {
        const std::vector<double> logits = net.forward(x);
        return static_cast<std::size_t>(
            std::max_element(logits.begin(), logits.end()) - logits.begin());
    };

    std::size_t correct = 0;
    for (std::size_t i = 0; i < test_set.inputs.size(); ++i) {
        if (predict(test_set.inputs[i]) == test_set.labels[i]) ++correct;
    }
    result.accuracy =
        static_cast<double>(correct) / static_cast<double>(test_set.inputs.size());

    // Augmented accuracy: each test image gets an independent uniform
    // quarter-turn before prediction.
    Rng aug_rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
    std::uniform_int_distribution<std::size_t> pick_rot(0, 3);
    const GroupSpec grid = cyclic_grid_spec(cfg.k, 4);
    std::vector<DenseMatrix> rots;
    for (std::size_t j = 0; j < 4; ++j) {
        rots.push_back(grid.rho_in({static_cast<double>(j)}));
    }
    std::size_t aug_correct = 0;
    for (std::size_t i = 0; i < test_set.inputs.size(); ++i) {
        const std::vector<double> x =
            multiply(rots[pick_rot(aug_rng)], test_set.inputs[i]);
        if (predict(x) == test_set.labels[i]) ++aug_correct;
    }
    result.augmented_accuracy = static_cast<double>(aug_correct) /
                                static_cast<double>(test_set.inputs.size());
    result.combined =
        combined_accuracy(result.accuracy, result.augmented_accuracy);

    Rng ierr_rng(seed ^ 0xa0761d6478bd642fULL);
    result.ierr = invariance_error(
        [&](const std::vector<double>& x) { return net.forward(x); },
        test_set.inputs, grid, Subset::word_set({0, 1, 2, 3}),
        std::min<std::size_t>(256, test_set.inputs.size() * 4), ierr_rng);
    return result;
}

} // namespace equiproj
