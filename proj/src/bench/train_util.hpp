#pragma once

// Internal helpers shared by the benchmark training loops. Not installed.

#include "equiproj/bench.hpp"

#include <cmath>
#include <cstddef>

namespace equiproj::detail {

// Soft-invariant bias companion for a projected layer: the invariant
// projector of the layer's output space at the layer's own cutoff. Returns
// nothing when every direction is retained — the bias is then unconstrained
// and projected training must match the unprojected loop exactly.
inline std::optional<DenseMatrix> bias_companion(const GroupSpec& out_side,
                                                 double b) {
    const Projector inv = build_invariant_projector(out_side, b);
    double kept = 0.0;
    for (const auto& [sigma, gamma] : inv.spectrum) kept += gamma;
    if (kept + 0.5 >= static_cast<double>(out_side.dim_in())) return std::nullopt;
    return inv.matrix;
}

// Gradients without the projector pullback (grad_theta holds grad_W). The
// pullback is linear, so the loops below accumulate raw gradients over a
// batch and pull the average back once in sgd_apply_raw.
GradientBundle mse_gradients_raw(const MLP& net, const std::vector<double>& x,
                                 const std::vector<double>& y);
GradientBundle ce_gradients_raw(const MLP& net, const std::vector<double>& x,
                                std::size_t label);

inline GradientBundle zero_gradients(const MLP& net) {
    GradientBundle g;
    for (const auto& layer : net.layers) {
        g.grad_theta.emplace_back(layer.theta.rows, layer.theta.cols);
        g.grad_bias.emplace_back(layer.bias.size(), 0.0);
    }
    return g;
}

inline void add_gradients(GradientBundle& acc, const GradientBundle& g) {
    for (std::size_t l = 0; l < acc.grad_theta.size(); ++l) {
        auto& t = acc.grad_theta[l].entries;
        const auto& s = g.grad_theta[l].entries;
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += s[i];
        auto& b = acc.grad_bias[l];
        const auto& sb = g.grad_bias[l];
        for (std::size_t i = 0; i < b.size(); ++i) b[i] += sb[i];
    }
    acc.loss += g.loss;
}

/// theta -= lr·scale·pullback(raw grad), then re-projects the effective
/// weights (scale is typically 1/batch).
inline void sgd_apply_raw(MLP& net, const GradientBundle& raw, double scale,
                          double lr) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        MLPLayer& layer = net.layers[l];
        const double step = lr * scale;
        const DenseMatrix grad =
            layer.projector ? apply_projector(*layer.projector, raw.grad_theta[l])
                            : raw.grad_theta[l];
        for (std::size_t i = 0; i < grad.entries.size(); ++i) {
            layer.theta.entries[i] -= step * grad.entries[i];
        }
        // The bias starts at zero, so projecting every step keeps it inside
        // the companion's soft-invariant subspace.
        const std::vector<double> gb =
            (layer.projector && layer.projector->bias_core)
                ? multiply(*layer.projector->bias_core, raw.grad_bias[l])
                : raw.grad_bias[l];
        for (std::size_t i = 0; i < gb.size(); ++i) {
            layer.bias[i] -= step * gb[i];
        }
        net.refresh(l);
    }
}

inline bool finite_network(const MLP& net) {
    for (const auto& layer : net.layers) {
        if (!layer.theta.all_finite() || !layer.w.all_finite()) return false;
        for (double b : layer.bias) {
            if (!std::isfinite(b)) return false;
        }
    }
    return true;
}

} // namespace equiproj::detail
