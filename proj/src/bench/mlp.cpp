#include "equiproj/bench.hpp"

#include "equiproj/errors.hpp"
#include "train_util.hpp"

#include <cmath>
#include <random>

namespace equiproj {

void MLP::refresh(std::size_t layer) {
    MLPLayer& l = layers.at(layer);
    l.w = l.projector ? apply_projector(*l.projector, l.theta) : l.theta;
}

void MLP::refresh_all() {
    for (std::size_t l = 0; l < layers.size(); ++l) refresh(l);
}

namespace {

std::vector<double> activate(const std::vector<double>& a, Activation act) {
    if (act == Activation::identity) return a;
    std::vector<double> z(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) z[i] = a[i] > 0.0 ? a[i] : 0.0;
    return z;
}

struct ForwardTrace {
    std::vector<std::vector<double>> pre;  // pre[l]: pre-activation of layer l
    std::vector<std::vector<double>> post; // post[0] = x, post[l+1] = output of layer l
};

ForwardTrace trace_forward(const MLP& net, const std::vector<double>& x) {
    ForwardTrace t;
    t.post.push_back(x);
    for (const auto& layer : net.layers) {
        std::vector<double> a = multiply(layer.w, t.post.back());
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += layer.bias[i];
        t.post.push_back(activate(a, layer.activation));
        t.pre.push_back(std::move(a));
    }
    return t;
}

// Raw gradients: grad_theta holds dL/dW without the projector pullback.
GradientBundle backprop(const MLP& net, const ForwardTrace& t,
                        std::vector<double> dloss_dout, double loss) {
    const std::size_t n = net.layers.size();
    GradientBundle g;
    g.loss = loss;
    g.grad_theta.resize(n);
    g.grad_bias.resize(n);

    std::vector<double> delta = std::move(dloss_dout);
    for (std::size_t l = n; l-- > 0;) {
        const MLPLayer& layer = net.layers[l];
        if (layer.activation == Activation::relu) {
            for (std::size_t i = 0; i < delta.size(); ++i) {
                if (t.pre[l][i] <= 0.0) delta[i] = 0.0;
            }
        }
        const std::vector<double>& z = t.post[l];
        DenseMatrix grad_w(layer.w.rows, layer.w.cols);
        for (std::size_t i = 0; i < grad_w.rows; ++i) {
            for (std::size_t j = 0; j < grad_w.cols; ++j) {
                grad_w.at(i, j) = delta[i] * z[j];
            }
        }
        g.grad_theta[l] = std::move(grad_w);
        g.grad_bias[l] = delta;
        if (l > 0) {
            delta = multiply(transpose(layer.w), delta);
        }
    }
    return g;
}

// Pull each weight gradient back through the reparameterization W = B·θ; the
// projector matrix is symmetric, so the pullback is the projector
// application itself. Bias gradients pass through the bias companion when
// the projector carries one, keeping the bias inside the soft-invariant
// subspace of the layer's output space.
void apply_pullback(const MLP& net, GradientBundle& g) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const MLPLayer& layer = net.layers[l];
        if (layer.projector) {
            g.grad_theta[l] = apply_projector(*layer.projector, g.grad_theta[l]);
            if (layer.projector->bias_core) {
                g.grad_bias[l] =
                    multiply(*layer.projector->bias_core, g.grad_bias[l]);
            }
        }
    }
}

GradientBundle mse_core(const MLP& net, const std::vector<double>& x,
                        const std::vector<double>& y) {
    ForwardTrace t = trace_forward(net, x);
    const std::vector<double>& out = t.post.back();
    if (out.size() != y.size()) {
        throw shape_error("mlp_gradients_mse: target length mismatch");
    }
    std::vector<double> dout(out.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        dout[i] = out[i] - y[i];
        loss += 0.5 * dout[i] * dout[i];
    }
    return backprop(net, t, std::move(dout), loss);
}

GradientBundle ce_core(const MLP& net, const std::vector<double>& x,
                       std::size_t label) {
    ForwardTrace t = trace_forward(net, x);
    const std::vector<double>& out = t.post.back();
    if (label >= out.size()) {
        throw invalid_input_error("mlp_gradients_ce: label out of range");
    }
    std::vector<double> p = softmax(out);
    const double loss = -std::log(std::max(p[label], 1e-300));
    p[label] -= 1.0;
    return backprop(net, t, std::move(p), loss);
}

} // namespace

std::vector<double> MLP::forward(const std::vector<double>& x) const {
    std::vector<double> z = x;
    for (const auto& layer : layers) {
        std::vector<double> a = multiply(layer.w, z);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += layer.bias[i];
        z = activate(a, layer.activation);
    }
    return z;
}

MLP build_mlp(const std::vector<std::size_t>& dims,
              std::vector<std::optional<Projector>> projectors,
              std::uint64_t seed) {
    if (dims.size() < 2) {
        throw invalid_input_error("build_mlp: need at least input and output dims");
    }
    if (projectors.size() != dims.size() - 1) {
        throw invalid_input_error("build_mlp: one projector slot per layer");
    }
    Rng rng(seed);
    MLP net;
    net.layers.resize(dims.size() - 1);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        MLPLayer& layer = net.layers[l];
        const std::size_t fan_in = dims[l];
        const std::size_t fan_out = dims[l + 1];
        std::normal_distribution<double> init(
            0.0, 1.0 / std::sqrt(static_cast<double>(fan_in)));
        layer.theta = DenseMatrix(fan_out, fan_in);
        for (auto& e : layer.theta.entries) e = init(rng);
        layer.bias.assign(fan_out, 0.0);
        layer.activation =
            (l + 2 == dims.size()) ? Activation::identity : Activation::relu;
        layer.projector = std::move(projectors[l]);
        if (layer.projector) {
            const Projector& p = *layer.projector;
            const bool ok = p.equivariant
                                ? (p.d == fan_in && p.d_prime == fan_out)
                                : (p.d == fan_in);
            if (!ok) {
                throw shape_error("build_mlp: projector does not match layer " +
                                  std::to_string(l));
            }
            if (p.bias_core &&
                (p.bias_core->rows != fan_out || p.bias_core->cols != fan_out)) {
                throw shape_error("build_mlp: bias companion does not match "
                                  "layer " +
                                  std::to_string(l));
            }
        }
        net.refresh(l);
    }
    return net;
}

GradientBundle mlp_gradients_mse(const MLP& net, const std::vector<double>& x,
                                 const std::vector<double>& y) {
    GradientBundle g = mse_core(net, x, y);
    apply_pullback(net, g);
    return g;
}

GradientBundle mlp_gradients_ce(const MLP& net, const std::vector<double>& x,
                                std::size_t label) {
    GradientBundle g = ce_core(net, x, label);
    apply_pullback(net, g);
    return g;
}

namespace detail {

GradientBundle mse_gradients_raw(const MLP& net, const std::vector<double>& x,
                                 const std::vector<double>& y) {
    return mse_core(net, x, y);
}

GradientBundle ce_gradients_raw(const MLP& net, const std::vector<double>& x,
                                std::size_t label) {
    return ce_core(net, x, label);
}

} // namespace detail

} // namespace equiproj
