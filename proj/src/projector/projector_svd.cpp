#include "equiproj/projector_svd.hpp"

#include "equiproj/errors.hpp"
#include "equiproj/numerics.hpp"

#include <cmath>
#include <optional>

namespace equiproj {

namespace {

// Σ_i γ_i·v_i·v_iᵀ over the columns of V, computed as (V·diag(√γ))·(…)ᵀ so
// the result is symmetric by construction.
DenseMatrix weighted_outer_sum(const DenseMatrix& v,
                               const std::vector<double>& gamma) {
    DenseMatrix scaled = v;
    for (std::size_t j = 0; j < scaled.cols; ++j) {
        const double w = std::sqrt(gamma[j]);
        for (std::size_t i = 0; i < scaled.rows; ++i) {
            scaled.at(i, j) *= w;
        }
    }
    return multiply(scaled, transpose(scaled));
}

DenseMatrix retained_columns(const DenseMatrix& v,
                             const std::vector<double>& gamma) {
    std::size_t m = 0;
    for (double g : gamma) m += (g == 1.0) ? 1 : 0;
    DenseMatrix basis(v.rows, m);
    std::size_t col = 0;
    for (std::size_t j = 0; j < v.cols; ++j) {
        if (gamma[j] != 1.0) continue;
        for (std::size_t i = 0; i < v.rows; ++i) {
            basis.at(i, col) = v.at(i, j);
        }
        ++col;
    }
    return basis;
}

Projector assemble(const DenseMatrix& v, const std::vector<double>& sigma,
                   double b, std::optional<double> s) {
    std::vector<double> gamma(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] < b) {
            gamma[i] = 1.0;
        } else if (s) {
            gamma[i] = std::exp(-(sigma[i] * sigma[i]) / (*s * *s));
        } else {
            gamma[i] = 0.0;
        }
    }

    Projector p;
    p.matrix = weighted_outer_sum(v, gamma);
    p.route = s ? Route::svd_smooth : Route::svd_hard;
    p.cutoff_b = b;
    p.smooth_s = s;
    p.spectrum.reserve(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        p.spectrum.emplace_back(sigma[i], gamma[i]);
    }
    if (!s) p.basis = retained_columns(v, gamma);
    return p;
}

void check_cutoff(double b) {
    if (!(b >= 0.0)) {
        throw invalid_input_error("projector: cutoff b must be non-negative");
    }
}

} // namespace

std::string route_name(Route route) {
    switch (route) {
        case Route::svd_hard: return "svd_hard";
        case Route::svd_smooth: return "svd_smooth";
        case Route::schur_hard: return "schur_hard";
        case Route::schur_smooth: return "schur_smooth";
    }
    return "svd_hard";
}

namespace {

Projector build_invariant(const GroupSpec& spec, double b,
                          std::optional<double> s) {
    check_cutoff(b);
    if (spec.has_output_rep()) {
        throw invalid_input_error(
            "build_invariant_projector: spec carries an output representation;"
            " use the equivariant builder");
    }
    SvdResult dec =
        svd(hcat(spec.generators_in)); // σ ascending; all d left vectors in U
    Projector p = assemble(dec.U, dec.sigma, b, s);
    p.equivariant = false;
    p.d = spec.dim_in();
    p.d_prime = 1;
    return p;
}

Projector build_equivariant(const GroupSpec& spec, double b,
                            std::optional<double> s) {
    check_cutoff(b);
    ConstraintMatrix c = build_constraint(spec);
    SvdResult dec = svd(c.L); // right singular vectors: all d·d′ columns of V
    Projector p = assemble(dec.V, dec.sigma, b, s);
    p.equivariant = true;
    p.d = c.d;
    p.d_prime = c.d_prime;
    return p;
}

} // namespace

Projector build_invariant_projector(const GroupSpec& spec, double b) {
    return build_invariant(spec, b, std::nullopt);
}

Projector build_equivariant_projector(const GroupSpec& spec, double b) {
    return build_equivariant(spec, b, std::nullopt);
}

Projector build_smooth(const GroupSpec& spec, double b, double s) {
    if (!(s > 0.0)) {
        throw invalid_input_error("build_smooth: s must be positive");
    }
    return spec.has_output_rep() ? build_equivariant(spec, b, s)
                                 : build_invariant(spec, b, s);
}

DenseMatrix apply_projector(const Projector& p, const DenseMatrix& theta) {
    if (!p.equivariant) {
        if (theta.cols == 1 && theta.rows == p.d) {
            return multiply(p.matrix, theta);
        }
        if (theta.cols == p.d) {
            // Row-wise: each row of θ is an independent parameter vector and
            // the projector matrix is symmetric.
            return multiply(theta, p.matrix);
        }
        throw shape_error("apply_projector: θ does not match dimension " +
                          std::to_string(p.d));
    }
    if (theta.rows != p.d_prime || theta.cols != p.d) {
        throw shape_error("apply_projector: θ must be " +
                          std::to_string(p.d_prime) + "x" + std::to_string(p.d));
    }
    std::vector<double> w = multiply(p.matrix, vec(theta));
    return unvec(w, p.d_prime, p.d);
}

double softness_to_cutoff(const std::vector<double>& spectrum, double softness) {
    if (spectrum.empty()) {
        throw invalid_input_error("softness_to_cutoff: empty spectrum");
    }
    if (!(softness >= 0.0 && softness <= 1.0)) {
        throw invalid_input_error("softness_to_cutoff: softness must lie in [0,1]");
    }
    for (std::size_t i = 1; i < spectrum.size(); ++i) {
        if (spectrum[i] < spectrum[i - 1]) {
            throw invalid_input_error("softness_to_cutoff: spectrum must be ascending");
        }
    }

    const std::size_t len = spectrum.size();
    std::size_t n0 = 0;
    while (n0 < len && spectrum[n0] <= 1e-10) ++n0;

    std::size_t m =
        n0 + static_cast<std::size_t>(
                 std::llround(softness * static_cast<double>(len - n0)));
    // Extend across ties so the cutoff never lands on a σ value.
    while (m > 0 && m < len && spectrum[m] - spectrum[m - 1] <= 1e-10) ++m;

    if (m == len) return spectrum.back() + 1.0;
    if (m == 0) return spectrum.front() / 2.0;
    return 0.5 * (spectrum[m - 1] + spectrum[m]);
}

} // namespace equiproj
