#include "equiproj/projector_schur.hpp"

#include "equiproj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace equiproj {

namespace {

// Output side of an invariance target: everything transforms trivially, which
// is the Schur form of the zero matrix.
SchurForm trivial_form(std::size_t n) {
    SchurForm f;
    f.U = DenseMatrix::identity(n);
    f.blocks.assign(n, SchurBlock{1, 0.0, 0.0, 0.0});
    return f;
}

CellRule make_rule(const SchurBlock& t, const SchurBlock& s, double b,
                   double tol_eig, const SchurMode& mode) {
    CellRule r;
    const double da = t.a - s.a;
    if (t.size == 2 && s.size == 2) {
        r.sigma_comm = std::hypot(da, t.beta - s.beta);
        r.sigma_anti = std::hypot(da, t.beta + s.beta);
        r.equivalent = std::abs(da) <= tol_eig &&
                       std::abs(std::abs(t.beta) - std::abs(s.beta)) <= tol_eig;
    } else if (t.size == 2 || s.size == 2) {
        const double beta = (t.size == 2) ? t.beta : s.beta;
        r.sigma_comm = r.sigma_anti = std::hypot(da, beta);
        r.equivalent = std::abs(da) <= tol_eig && std::abs(beta) <= tol_eig;
    } else {
        r.sigma_comm = r.sigma_anti = std::abs(da);
        r.equivalent = std::abs(da) <= tol_eig;
    }
    r.lambda_sum = t.lambda + s.lambda;
    r.gamma = mode.smooth ? std::exp(-r.lambda_sum / (mode.s * mode.s)) : 0.0;

    // A component is retained iff its deviation is strictly below the cutoff,
    // the same rule the SVD route applies to its singular values.
    const bool keep_comm = r.sigma_comm < b;
    const bool keep_anti = r.sigma_anti < b;
    if (keep_comm && keep_anti) {
        r.action = CellAction::pass;
    } else if (keep_comm) {
        r.action = CellAction::symmetrize;
    } else if (keep_anti) {
        r.action = CellAction::antisymmetrize;
    } else {
        r.action = CellAction::zero;
    }
    return r;
}

// Applies one cell rule in place to the region of Θ′ selected by the blocks.
void apply_rule(DenseMatrix& theta, const CellRule& rule, std::size_t row,
                std::size_t st, std::size_t col, std::size_t ss,
                const SchurMode& mode) {
    const double gamma = mode.smooth ? rule.gamma : 0.0;
    if (st == 2 && ss == 2) {
        const double wc = (rule.action == CellAction::pass ||
                           rule.action == CellAction::symmetrize)
                              ? 1.0
                              : gamma;
        const double wa = (rule.action == CellAction::pass ||
                           rule.action == CellAction::antisymmetrize)
                              ? 1.0
                              : gamma;
        const double a = theta.at(row, col);
        const double bq = theta.at(row, col + 1);
        const double c = theta.at(row + 1, col);
        const double dq = theta.at(row + 1, col + 1);
        const double p = 0.5 * (a + dq);
        const double q = 0.5 * (bq - c);
        // Split into the rotation-commuting part [[p,q],[−q,p]] and the
        // complement, then reweight each independently.
        theta.at(row, col) = wc * p + wa * (a - p);
        theta.at(row, col + 1) = wc * q + wa * (bq - q);
        theta.at(row + 1, col) = wc * (-q) + wa * (c + q);
        theta.at(row + 1, col + 1) = wc * p + wa * (dq - p);
        return;
    }
    const double w = (rule.action == CellAction::pass) ? 1.0 : gamma;
    for (std::size_t i = 0; i < st; ++i) {
        for (std::size_t j = 0; j < ss; ++j) {
            theta.at(row + i, col + j) *= w;
        }
    }
}

struct GeneratorPlan {
    BlockPlan plan;
};

std::vector<GeneratorPlan> make_plans(const GroupSpec& spec,
                                      std::size_t d_prime, double b,
                                      const SchurMode& mode) {
    std::vector<GeneratorPlan> plans;
    plans.reserve(spec.n_g());
    for (std::size_t i = 0; i < spec.n_g(); ++i) {
        SchurForm s_in = schur_normal(spec.generators_in[i]);
        SchurForm s_out = spec.has_output_rep()
                              ? schur_normal(spec.generators_out[i])
                              : trivial_form(d_prime);
        plans.push_back({classify_blocks(s_in, s_out, b, 1e-8, mode)});
    }
    return plans;
}

DenseMatrix apply_plans(const std::vector<GeneratorPlan>& plans,
                        const DenseMatrix& theta, const SchurMode& mode) {
    DenseMatrix w = theta;
    for (const auto& gp : plans) {
        const BlockPlan& plan = gp.plan;
        DenseMatrix rot =
            multiply(transpose(plan.schur_out.U), multiply(w, plan.schur_in.U));
        for (std::size_t l = 0; l < plan.schur_out.blocks.size(); ++l) {
            const std::size_t row = plan.schur_out.block_offset(l);
            const std::size_t st = plan.schur_out.blocks[l].size;
            for (std::size_t k = 0; k < plan.schur_in.blocks.size(); ++k) {
                const std::size_t col = plan.schur_in.block_offset(k);
                const std::size_t ss = plan.schur_in.blocks[k].size;
                apply_rule(rot, plan.cells[l][k], row, st, col, ss, mode);
            }
        }
        w = multiply(plan.schur_out.U, multiply(rot, transpose(plan.schur_in.U)));
    }
    return w;
}

} // namespace

DenseMatrix sym2(const DenseMatrix& block) {
    if (block.rows != 2 || block.cols != 2) {
        throw shape_error("sym2: block must be 2x2");
    }
    const double p = 0.5 * (block.at(0, 0) + block.at(1, 1));
    const double q = 0.5 * (block.at(0, 1) - block.at(1, 0));
    return DenseMatrix::from_rows({{p, q}, {-q, p}});
}

BlockPlan classify_blocks(const SchurForm& schur_in, const SchurForm& schur_out,
                          double b, double tol_eig, SchurMode mode) {
    if (!(tol_eig > 0.0)) {
        throw invalid_input_error("classify_blocks: tol_eig must be positive");
    }
    if (!(b >= 0.0)) {
        throw invalid_input_error("classify_blocks: cutoff b must be non-negative");
    }
    BlockPlan plan;
    plan.schur_in = schur_in;
    plan.schur_out = schur_out;
    plan.cells.resize(schur_out.blocks.size());
    for (std::size_t l = 0; l < schur_out.blocks.size(); ++l) {
        plan.cells[l].reserve(schur_in.blocks.size());
        for (std::size_t k = 0; k < schur_in.blocks.size(); ++k) {
            plan.cells[l].push_back(
                make_rule(schur_out.blocks[l], schur_in.blocks[k], b, tol_eig,
                          mode));
        }
    }
    return plan;
}

DenseMatrix schur_project(const GroupSpec& spec, const DenseMatrix& theta,
                          double b, SchurMode mode) {
    if (!(b >= 0.0)) {
        throw invalid_input_error("schur_project: cutoff b must be non-negative");
    }
    if (mode.smooth && !(mode.s > 0.0)) {
        throw invalid_input_error("schur_project: smooth s must be positive");
    }
    const std::size_t d = spec.dim_in();
    if (theta.cols != d) {
        throw shape_error("schur_project: θ must have " + std::to_string(d) +
                          " columns");
    }
    if (spec.has_output_rep() && theta.rows != spec.dim_out()) {
        throw shape_error("schur_project: θ must have " +
                          std::to_string(spec.dim_out()) + " rows");
    }
    return apply_plans(make_plans(spec, theta.rows, b, mode), theta, mode);
}

Projector materialize(const GroupSpec& spec, double b, SchurMode mode) {
    if (!(b >= 0.0)) {
        throw invalid_input_error("materialize: cutoff b must be non-negative");
    }
    if (mode.smooth && !(mode.s > 0.0)) {
        throw invalid_input_error("materialize: smooth s must be positive");
    }
    const std::size_t d = spec.dim_in();
    const bool equivariant = spec.has_output_rep();
    const std::size_t dp = equivariant ? spec.dim_out() : 1;
    const std::size_t dim = equivariant ? d * dp : d;
    if (dim > 10000) {
        throw size_guard_error(
            "materialize: explicit matrix would be " + std::to_string(dim) +
            "², exceeding the 10⁴ guard");
    }

    const auto plans = make_plans(spec, dp, b, mode);

    DenseMatrix m(dim, dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        DenseMatrix basis_theta(dp, d, 0.0);
        if (equivariant) {
            // vec is column-major: index j = col·d′ + row.
            basis_theta.at(j % dp, j / dp) = 1.0;
        } else {
            basis_theta.at(0, j) = 1.0;
        }
        DenseMatrix w = apply_plans(plans, basis_theta, mode);
        if (equivariant) {
            const std::vector<double> v = vec(w);
            for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = v[i];
        } else {
            for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = w.at(0, i);
        }
    }

    Projector p;
    p.matrix = std::move(m);
    p.route = mode.smooth ? Route::schur_smooth : Route::schur_hard;
    p.cutoff_b = b;
    if (mode.smooth) p.smooth_s = mode.s;
    p.equivariant = equivariant;
    p.d = d;
    p.d_prime = dp;

    // Per-cell deviations with multiplicities reproduce the SVD route's σ
    // spectrum for a single generator; composition of several generators has
    // no single spectrum, so it is left empty there.
    if (spec.n_g() == 1) {
        const BlockPlan& plan = plans.front().plan;
        for (std::size_t l = 0; l < plan.schur_out.blocks.size(); ++l) {
            for (std::size_t k = 0; k < plan.schur_in.blocks.size(); ++k) {
                const CellRule& r = plan.cells[l][k];
                const std::size_t st = plan.schur_out.blocks[l].size;
                const std::size_t ss = plan.schur_in.blocks[k].size;
                const double gamma_comm =
                    r.sigma_comm < b ? 1.0 : (mode.smooth ? r.gamma : 0.0);
                const double gamma_anti =
                    r.sigma_anti < b ? 1.0 : (mode.smooth ? r.gamma : 0.0);
                if (st == 2 && ss == 2) {
                    p.spectrum.emplace_back(r.sigma_comm, gamma_comm);
                    p.spectrum.emplace_back(r.sigma_comm, gamma_comm);
                    p.spectrum.emplace_back(r.sigma_anti, gamma_anti);
                    p.spectrum.emplace_back(r.sigma_anti, gamma_anti);
                } else {
                    for (std::size_t c = 0; c < st * ss; ++c) {
                        p.spectrum.emplace_back(r.sigma_comm, gamma_comm);
                    }
                }
            }
        }
        std::sort(p.spectrum.begin(), p.spectrum.end());
    }
    return p;
}

} // namespace equiproj
