#include "equiproj/projector_svd.hpp"

#include "equiproj/errors.hpp"
#include "equiproj/numerics.hpp"

namespace equiproj {

ConstraintMatrix build_constraint(const GroupSpec& spec) {
    if (!spec.has_output_rep()) {
        throw invalid_input_error(
            "build_constraint: spec has no output representation");
    }
    const std::size_t d = spec.dim_in();
    const std::size_t dp = spec.dim_out();

    ConstraintMatrix c;
    c.d = d;
    c.d_prime = dp;
    c.per_generator.reserve(spec.n_g());

    const DenseMatrix eye_d = DenseMatrix::identity(d);
    const DenseMatrix eye_dp = DenseMatrix::identity(dp);
    for (std::size_t i = 0; i < spec.n_g(); ++i) {
        const DenseMatrix& a_in = spec.generators_in[i];
        const DenseMatrix& a_out = spec.generators_out[i];
        if (a_in.rows != d || a_in.cols != d || a_out.rows != dp ||
            a_out.cols != dp) {
            throw shape_error(
                "build_constraint: generator shapes do not match the θ layout");
        }
        // Acting on vec(W) for W ∈ ℝ^{d′×d}: vec(W·A_X − A_Y·W).
        c.per_generator.push_back(kron(transpose(a_in), eye_dp) -
                                  kron(eye_d, a_out));
    }

    c.L = vstack(c.per_generator);
    return c;
}

} // namespace equiproj
