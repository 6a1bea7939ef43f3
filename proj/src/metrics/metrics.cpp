#include "equiproj/metrics.hpp"

#include "equiproj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace equiproj {

namespace {

std::vector<double> random_unit_vector(std::size_t n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(n);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& e : x) {
            e = gauss(rng);
            norm += e * e;
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& e : x) e /= norm;
    return x;
}

} // namespace

std::vector<double> residual(const DenseMatrix& w, const GroupElement& g,
                             const std::vector<double>& x) {
    if (g.matrix_in.cols != x.size() || w.cols != x.size()) {
        throw shape_error("residual: input length does not match W / ρ_X(g)");
    }
    if (g.matrix_out && g.matrix_out->cols != w.rows) {
        throw shape_error("residual: ρ_Y(g) does not match W's output dimension");
    }
    std::vector<double> lhs = multiply(w, multiply(g.matrix_in, x));
    std::vector<double> rhs = multiply(w, x);
    if (g.matrix_out) rhs = multiply(*g.matrix_out, rhs);
    for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] -= rhs[i];
    return lhs;
}

double relative_error(const DenseMatrix& w, const GroupElement& g,
                      const std::vector<double>& x) {
    const double wf = frobenius_norm(w);
    const double xn = norm2(x);
    if (wf == 0.0 || xn == 0.0) {
        throw degenerate_input_error(
            "relative_error: ‖W‖_F and ‖x‖ must be positive");
    }
    return norm2(residual(w, g, x)) / (wf * xn);
}

namespace {

double slope_for(double b, BoundKind kind, std::size_t d_prime) {
    switch (kind) {
        case BoundKind::invariant:
        case BoundKind::equivariant_schur:
            return b;
        case BoundKind::equivariant_svd:
            return b * std::sqrt(static_cast<double>(d_prime));
    }
    return b;
}

} // namespace

double bound_eta(const GroupSpec& spec, double b, BoundKind kind,
                 std::size_t d_prime) {
    if (!spec.continuous) {
        throw invalid_input_error(
            "bound_eta: discrete specs take the word-metric bound, not the "
            "first-order coefficient");
    }
    if (!(b >= 0.0)) {
        throw invalid_input_error("bound_eta: b must be non-negative");
    }
    return slope_for(b, kind, d_prime) *
           std::sqrt(static_cast<double>(spec.n_g())) * spec.r_g;
}

ErrorReport verify_first_order(const GroupSpec& spec, const DenseMatrix& w,
                               double b, BoundKind kind, std::size_t trials,
                               const std::vector<double>& t_values,
                               std::uint64_t seed) {
    if (!spec.continuous) {
        throw invalid_input_error("verify_first_order: spec must be continuous");
    }
    if (t_values.empty() || trials == 0) {
        throw invalid_input_error(
            "verify_first_order: needs at least one t value and one trial");
    }

    Rng rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    ErrorReport report;
    report.bound_slope = slope_for(b, kind, w.rows);
    report.bound_eta = bound_eta(spec, b, kind, w.rows);
    report.samples.reserve(t_values.size() * trials);

    for (double t : t_values) {
        for (std::size_t trial = 0; trial < trials; ++trial) {
            std::vector<double> coords(spec.n_g());
            double t_total = 0.0;
            for (auto& c : coords) {
                c = t * unit(rng);
                t_total += std::abs(c);
            }
            GroupElement g = element_at(spec, coords);
            std::vector<double> x = random_unit_vector(spec.dim_in(), rng);

            ErrorSample sample;
            sample.t_total = t_total;
            sample.residual_norm = norm2(residual(w, g, x));
            sample.relative_error = relative_error(w, g, x);
            report.max_relative =
                std::max(report.max_relative, sample.relative_error);
            if (sample.relative_error >
                report.bound_slope * t_total * 1.05 + 1e-8) {
                report.pass = false;
            }
            sample.element = std::move(g);
            report.samples.push_back(std::move(sample));
        }
    }

    // Least-squares fit e ≈ α·t + c·t² over all samples.
    double s2 = 0.0, s3 = 0.0, s4 = 0.0, se1 = 0.0, se2 = 0.0;
    for (const auto& s : report.samples) {
        const double t = s.t_total;
        s2 += t * t;
        s3 += t * t * t;
        s4 += t * t * t * t;
        se1 += t * s.relative_error;
        se2 += t * t * s.relative_error;
    }
    const double det = s2 * s4 - s3 * s3;
    if (std::abs(det) > 1e-30) {
        report.first_order_slope = (se1 * s4 - se2 * s3) / det;
        report.fitted_quadratic = (s2 * se2 - s3 * se1) / det;
    } else if (s2 > 0.0) {
        report.first_order_slope = se1 / s2;
        report.fitted_quadratic = 0.0;
    }
    return report;
}

ErrorReport verify_first_order(const GroupSpec& spec, const DenseMatrix& w,
                               double b, BoundKind kind, std::size_t trials,
                               std::uint64_t seed) {
    return verify_first_order(spec, w, b, kind, trials, {1e-3, 3e-3, 1e-2},
                              seed);
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw shape_error("kl_divergence: length mismatch");
    }
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < -1e-12 || q[i] < -1e-12) {
            throw invalid_input_error("kl_divergence: negative entries");
        }
        sp += p[i];
        sq += q[i];
    }
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9) {
        throw invalid_input_error("kl_divergence: inputs must sum to 1");
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue; // 0·log 0 = 0
        kl += p[i] * std::log(p[i] / std::max(q[i], 1e-12));
    }
    return kl;
}

std::vector<double> softmax(const std::vector<double>& logits) {
    std::vector<double> p(logits.size());
    const double m = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - m);
        z += p[i];
    }
    for (auto& e : p) e /= z;
    return p;
}

double invariance_error(const LogitsFn& logits,
                        const std::vector<std::vector<double>>& inputs,
                        const GroupSpec& spec, const Subset& subset,
                        std::size_t n_pairs, Rng& rng) {
    if (inputs.empty() || n_pairs == 0) {
        throw invalid_input_error("invariance_error: needs inputs and pairs");
    }
    std::uniform_int_distribution<std::size_t> pick(0, inputs.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const std::vector<double>& x = inputs[pick(rng)];
        GroupElement g = sample_element_in(spec, subset, rng);
        const std::vector<double> gx = multiply(g.matrix_in, x);
        total += kl_divergence(softmax(logits(x)), softmax(logits(gx)));
    }
    return total / static_cast<double>(n_pairs);
}

double combined_accuracy(double acc, double a_acc) {
    if (!(acc >= 0.0 && acc <= 1.0) || !(a_acc >= 0.0 && a_acc <= 1.0)) {
        throw invalid_input_error("combined_accuracy: inputs must lie in [0,1]");
    }
    return std::sqrt(acc * a_acc);
}

} // namespace equiproj
