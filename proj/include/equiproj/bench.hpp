#pragma once

#include "equiproj/dense_matrix.hpp"
#include "equiproj/groups.hpp"
#include "equiproj/metrics.hpp"
#include "equiproj/projector_svd.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace equiproj {

// ---------------------------------------------------------------------------
// Desk-scale experiments: a minimal trainable MLP with projected weights, the
// synthetic O(5)-invariant regression benchmark, a C₄ grid-pattern softness
// sweep, and the Schur-vs-SVD decomposition timing benchmark.
// ---------------------------------------------------------------------------

enum class Activation { relu, identity };

// One dense layer. The forward pass always uses the effective weights w,
// which are the projection of the raw parameters theta (or theta itself when
// no projector is attached); gradients flow to theta through the projector.
// When the projector carries a bias companion, bias gradients are projected
// with it too: the bias starts at zero and stays inside the soft-invariant
// subspace of the layer's output space, which is what keeps downstream
// readouts exactly invariant at softness 0.
struct MLPLayer {
    DenseMatrix theta;
    std::optional<Projector> projector;
    std::vector<double> bias;
    Activation activation = Activation::identity;
    DenseMatrix w;
};

struct MLP {
    std::vector<MLPLayer> layers;

    void refresh(std::size_t layer);
    void refresh_all();
    std::vector<double> forward(const std::vector<double>& x) const;
};

// Widths dims = {input, hidden…, output}; hidden layers get ReLU, the last
// layer is linear. projectors must have one entry per layer (nullopt = no
// projection). Initialization is seeded and scaled by 1/√fan_in.
MLP build_mlp(const std::vector<std::size_t>& dims,
              std::vector<std::optional<Projector>> projectors,
              std::uint64_t seed);

// Analytic gradients for one sample. grad_theta is the pullback of grad_W
// through the projector: B·vec-gradient for equivariant projectors,
// row-space product for invariant ones. These per-sample functions are the
// reference checked against finite differences; the training loops apply the
// same pullback once per batch to the averaged raw gradient, which is
// identical by linearity and far cheaper.
struct GradientBundle {
    std::vector<DenseMatrix> grad_theta;
    std::vector<std::vector<double>> grad_bias;
    double loss = 0.0;
};

// Squared-error loss ½‖F(x) − y‖².
GradientBundle mlp_gradients_mse(const MLP& net, const std::vector<double>& x,
                                 const std::vector<double>& y);
// Softmax cross-entropy against an integer label.
GradientBundle mlp_gradients_ce(const MLP& net, const std::vector<double>& x,
                                std::size_t label);

struct TrainResult {
    double relative_mse = 0.0; // test Σ(ŷ−y)² / Σ(y−ȳ)²
    double final_train_mse = 0.0;
    bool diverged = false;
};

// --- O(5)-invariant regression ----------------------------------------------

struct O5Sample {
    std::vector<double> x; // x₁ ‖ x₂ concatenated (ℝ¹⁰)
    double y = 0.0;
};

struct O5Task {
    double gamma = 0.0;
    double epsilon_den = 0.1;
    std::vector<O5Sample> train;
    std::vector<O5Sample> test;
};

// sin‖x₁‖ − ‖x₂‖³/2 + x₁ᵀx₂/(‖x₁‖‖x₂‖)
//   + γ·(|x₁¹|+|x₁²|+|x₂¹|+|x₂²|)/(|x₁³|+|x₁⁴|+|x₂³|+|x₂⁴|+ε).
// The γ term deliberately breaks O(5) invariance; ε keeps the denominator
// away from zero.
double o5_target(const std::vector<double>& x1, const std::vector<double>& x2,
                 double gamma, double epsilon_den);

// Standard-normal inputs; targets from o5_target. Deterministic given seed.
O5Task make_o5_task(double gamma, double epsilon_den, std::size_t n_train,
                    std::size_t n_test, std::uint64_t seed);

// Architecture and optimization settings for the O(5) benchmark. Hidden
// widths are multiples of 5, treated as direct sums of the 5-dimensional
// standard representation; hidden layers are equivariance-projected at
// hidden_softness. The readout is invariance-projected at readout_softness —
// note the invariance spectrum of stacked so(5) generators is flat (all σ =
// 2), so any softness above one retained direction keeps the full readout,
// and softness 0 would zero it; the default therefore leaves the readout
// free and puts the tunable constraint on the hidden layers.
struct O5Config {
    std::vector<std::size_t> hidden_copies = {4, 4};
    double hidden_softness = 0.25;
    double readout_softness = 1.0;
    bool project = true;
    double lr = 1e-2;
    std::size_t epochs = 300;
    std::size_t batch_size = 64;
};

// Builds the per-layer projectors once (they are seed-independent and can be
// shared across training runs). Empty optionals when cfg.project is false.
std::vector<std::optional<Projector>> o5_projectors(const O5Config& cfg);

TrainResult train_o5_mlp(const O5Task& task, const O5Config& cfg,
                         const std::vector<std::optional<Projector>>& projectors,
                         std::uint64_t seed);

// --- C₄ grid classification --------------------------------------------------

struct GridDataset {
    std::size_t k = 0;
    std::size_t n_classes = 0;
    std::vector<std::vector<double>> inputs; // flattened k×k images
    std::vector<std::size_t> labels;
};

// Synthetic k×k patterns: n_classes fixed binary templates (deterministic in
// k and the class index), each sample rotated by a uniform C₄ element plus
// Gaussian pixel noise with standard deviation noise_sigma. Labels are
// rotation-independent and class-balanced within ±1.
GridDataset grid_task(std::size_t k, std::size_t n_classes,
                      std::size_t n_samples, double noise_sigma, Rng& rng);

struct GridConfig {
    std::size_t k = 5;
    std::size_t n_classes = 3;
    std::size_t hidden = 25;
    double softness = 0.0;
    bool project = true;
    double lr = 0.05;
    std::size_t epochs = 60;
    std::size_t batch_size = 32;
    double noise_sigma = 0.3; // dataset construction
};

std::vector<std::optional<Projector>> grid_projectors(const GridConfig& cfg);

struct GridResult {
    double accuracy = 0.0;           // clean test accuracy
    double augmented_accuracy = 0.0; // accuracy under random C₄ rotations
    double combined = 0.0;           // √(acc·a_acc)
    double ierr = 0.0;               // mean KL invariance error over C₄
    bool diverged = false;
};

GridResult train_grid_classifier(const GridDataset& train_set,
                                 const GridDataset& test_set,
                                 const GridConfig& cfg,
                                 const std::vector<std::optional<Projector>>& projectors,
                                 std::uint64_t seed);

// --- decomposition timing ------------------------------------------------------

struct BenchRow {
    std::size_t grid_side = 0;
    double svd_seconds = 0.0;
    double schur_seconds = 0.0;
    double ratio = 0.0;                // svd / schur
    double agreement_frobenius = 0.0;  // ‖B_schur − B_svd‖_F (gate ≤ 1e-8)
};

// Times both routes to the C₄ equivariance projector on a k×k grid (weights
// k²×k², cutoff 0.5): the SVD route builds and decomposes the stacked
// constraint and extracts the retained basis; the Schur route decomposes the
// two generators and classifies blocks. Median over repeats; the routes'
// materialized projectors must agree before a cell is reported.
std::vector<BenchRow> bench_decompositions(const std::vector<std::size_t>& sizes,
                                           std::size_t repeats);

} // namespace equiproj
