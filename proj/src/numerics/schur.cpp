#include "equiproj/numerics.hpp"

#include "equiproj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace equiproj {

namespace {

DenseMatrix columns_slice(const DenseMatrix& m, std::size_t first,
                          std::size_t count) {
    DenseMatrix r(m.rows, count);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            r.at(i, j) = m.at(i, first + j);
        }
    }
    return r;
}

std::vector<double> column_of(const DenseMatrix& m, std::size_t j) {
    std::vector<double> c(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) c[i] = m.at(i, j);
    return c;
}

// v -= (uᵀv)·u for each captured unit vector u.
void project_out(std::vector<double>& v,
                 const std::vector<std::vector<double>>& basis) {
    for (const auto& u : basis) {
        const double c = dot(u, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
}

void normalize(std::vector<double>& v) {
    const double n = norm2(v);
    for (double& e : v) e /= n;
}

// A grown group of candidate basis columns: singleton spans a real
// eigendirection, a pair spans a rotation plane (stored as two columns).
struct Candidate {
    bool pair = false;
    std::vector<double> c0, c1;
};

// Split ascending values into clusters, starting a new cluster whenever the
// gap to the previous value exceeds tol. Deliberately generous: merging two
// genuinely distinct groups is handled correctly downstream (the pipeline
// only needs each cluster's span to be an invariant subspace, and unions of
// full eigenspaces are), while splitting one would hand it non-invariant
// slices.
std::vector<std::pair<std::size_t, std::size_t>>
cluster_ranges(const std::vector<double>& values, double tol) {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= values.size(); ++i) {
        if (i == values.size() || values[i] - values[i - 1] > tol) {
            ranges.emplace_back(start, i - start);
            start = i;
        }
    }
    return ranges;
}

// Canonicalize the action of a (near-)skew matrix K on ℝ^q together with a
// shared real part: emits singletons for null directions of K and (u, v)
// pairs spanning rotation planes, expressed in local q-dim coordinates.
std::vector<Candidate> canonicalize_skew(const DenseMatrix& K) {
    const std::size_t q = K.rows;
    std::vector<Candidate> out;
    if (q == 1) {
        out.push_back({false, {1.0}, {}});
        return out;
    }

    // -K² = KᵀK is symmetric PSD; its eigenvalues are the squared rotation
    // rates and its eigenspaces are K-invariant.
    DenseMatrix t = multiply(transpose(K), K);
    SymmetricEig te = symmetric_eig(t);
    const double w2max = te.values.empty() ? 0.0 : te.values.back();
    const double tol_b2 = 1e-10 * std::max(1.0, w2max);

    std::vector<std::vector<double>> captured;
    // Walk rotation rates descending so the cleanest (largest) planes are
    // pinned first; slower directions get re-orthogonalized against them.
    for (std::size_t r = q; r-- > 0;) {
        std::vector<double> u = column_of(te.Q, r);
        project_out(u, captured);
        if (norm2(u) < 0.5) continue; // already absorbed into a pinned plane
        normalize(u);

        if (te.values[r] <= tol_b2) {
            captured.push_back(u);
            out.push_back({false, std::move(u), {}});
            continue;
        }

        std::vector<double> v = multiply(K, u);
        project_out(v, captured);
        {
            const double c = dot(u, v);
            for (std::size_t i = 0; i < q; ++i) v[i] -= c * u[i];
        }
        if (norm2(v) <= std::sqrt(tol_b2)) {
            throw error("schur_normal: rotation plane collapsed while "
                        "pairing skew directions");
        }
        normalize(v);
        captured.push_back(u);
        captured.push_back(v);
        out.push_back({true, std::move(u), std::move(v)});
    }
    if (captured.size() != q) {
        throw error("schur_normal: skew canonicalization captured " +
                    std::to_string(captured.size()) + " of " +
                    std::to_string(q) + " directions");
    }
    return out;
}

} // namespace

DenseMatrix SchurBlock::matrix() const {
    if (size == 1) return DenseMatrix::from_rows({{a}});
    return DenseMatrix::from_rows({{a, beta}, {-beta, a}});
}

std::size_t SchurForm::dim() const {
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.size;
    return d;
}

std::size_t SchurForm::block_offset(std::size_t k) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < k; ++i) off += blocks[i].size;
    return off;
}

DenseMatrix SchurForm::block_diagonal() const {
    const std::size_t d = dim();
    DenseMatrix s(d, d, 0.0);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        s.at(off, off) = b.a;
        if (b.size == 2) {
            s.at(off, off + 1) = b.beta;
            s.at(off + 1, off) = -b.beta;
            s.at(off + 1, off + 1) = b.a;
        }
        off += b.size;
    }
    return s;
}

SchurForm schur_normal(const DenseMatrix& m) {
    if (!m.square()) throw shape_error("schur_normal: matrix is not square");
    if (!m.all_finite()) {
        throw invalid_input_error("schur_normal: non-finite entries");
    }
    const std::size_t d = m.rows;
    const double nf = frobenius_norm(m);

    DenseMatrix mt = transpose(m);
    const double commutator =
        frobenius_diff(multiply(m, mt), multiply(mt, m));
    if (commutator > 1e-8 * nf * nf) {
        throw not_normal_error(
            "schur_normal: input is not normal; ‖m·mᵀ − mᵀ·m‖_F = " +
            std::to_string(commutator) + " exceeds 1e-8·‖m‖_F² = " +
            std::to_string(1e-8 * nf * nf));
    }

    // Stage 1: eigenspaces of mᵀm are invariant under m and group directions
    // by singular value.
    SymmetricEig mu = symmetric_eig(multiply(mt, m));
    const double mu_tol =
        1e-7 * std::max(1.0, mu.values.empty() ? 0.0 : mu.values.back());

    std::vector<Candidate> candidates; // in global d-dim coordinates
    for (auto [first, count] : cluster_ranges(mu.values, mu_tol)) {
        DenseMatrix qc = columns_slice(mu.Q, first, count);
        DenseMatrix mc = multiply(transpose(qc), multiply(m, qc));

        // Stage 2: within the cluster, the symmetric part fixes the real
        // parts; its eigenspaces are invariant under the skew part.
        DenseMatrix hc = 0.5 * (mc + transpose(mc));
        DenseMatrix kc = 0.5 * (mc - transpose(mc));
        SymmetricEig ha = symmetric_eig(hc);
        const double a_scale =
            ha.values.empty()
                ? 0.0
                : std::max(std::abs(ha.values.front()),
                           std::abs(ha.values.back()));
        const double a_tol = 1e-7 * std::max(1.0, a_scale);

        for (auto [afirst, acount] : cluster_ranges(ha.values, a_tol)) {
            DenseMatrix ps = columns_slice(ha.Q, afirst, acount);
            DenseMatrix ks = multiply(transpose(ps), multiply(kc, ps));
            DenseMatrix base = multiply(qc, ps); // d×acount

            // Stage 3: canonicalize the skew action into rotation planes.
            for (Candidate local : canonicalize_skew(ks)) {
                Candidate global;
                global.pair = local.pair;
                global.c0 = multiply(base, local.c0);
                if (local.pair) global.c1 = multiply(base, local.c1);
                candidates.push_back(std::move(global));
            }
        }
    }

    // Assemble U, then read the block entries off Σ = Uᵀ m U so the emitted
    // blocks are exactly what the basis realizes.
    DenseMatrix u(d, d);
    std::vector<std::pair<std::size_t, std::size_t>> spans; // (offset, size)
    {
        std::size_t col = 0;
        for (const auto& c : candidates) {
            spans.emplace_back(col, c.pair ? 2 : 1);
            for (std::size_t i = 0; i < d; ++i) u.at(i, col) = c.c0[i];
            ++col;
            if (c.pair) {
                for (std::size_t i = 0; i < d; ++i) u.at(i, col) = c.c1[i];
                ++col;
            }
        }
        if (col != d) {
            throw error("schur_normal: assembled " + std::to_string(col) +
                        " basis columns for dimension " + std::to_string(d));
        }
    }

    DenseMatrix sigma = multiply(transpose(u), multiply(m, u));
    std::vector<SchurBlock> blocks;
    blocks.reserve(spans.size());
    for (auto [off, size] : spans) {
        SchurBlock b;
        b.size = size;
        if (size == 1) {
            b.a = sigma.at(off, off);
            b.beta = 0.0;
        } else {
            b.a = 0.5 * (sigma.at(off, off) + sigma.at(off + 1, off + 1));
            b.beta = 0.5 * (sigma.at(off, off + 1) - sigma.at(off + 1, off));
            if (b.beta > 0.0) {
                // Swap the pair's columns to the canonical orientation
                // (positive lower-left entry).
                for (std::size_t i = 0; i < d; ++i) {
                    std::swap(u.at(i, off), u.at(i, off + 1));
                }
                b.beta = -b.beta;
            }
        }
        b.lambda = std::hypot(b.a, b.beta);
        blocks.push_back(b);
    }

    // Deterministic block order: descending magnitude, then descending real
    // part, then pairs before singletons.
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) {
                         const auto& bx = blocks[x];
                         const auto& by = blocks[y];
                         if (bx.lambda != by.lambda) return bx.lambda > by.lambda;
                         if (bx.a != by.a) return bx.a > by.a;
                         return bx.size > by.size;
                     });

    SchurForm form;
    form.U = DenseMatrix(d, d);
    form.blocks.reserve(blocks.size());
    std::size_t col = 0;
    for (std::size_t idx : order) {
        const auto [off, size] = spans[idx];
        for (std::size_t j = 0; j < size; ++j, ++col) {
            for (std::size_t i = 0; i < d; ++i) {
                form.U.at(i, col) = u.at(i, off + j);
            }
        }
        form.blocks.push_back(blocks[idx]);
    }
    return form;
}

} // namespace equiproj
