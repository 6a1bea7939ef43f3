#include "equiproj/groups.hpp"

#include "equiproj/errors.hpp"

#include <cmath>

namespace equiproj {

TaylorCheck discrete_taylor_check(const std::vector<double>& f,
                                  const GroupSpec& spec,
                                  std::optional<double> h) {
    if (spec.continuous || spec.cyclic_order == 0) {
        throw invalid_input_error("discrete_taylor_check: spec must be discrete");
    }
    const std::size_t n = spec.cyclic_order;
    if (f.size() != n) {
        throw invalid_input_error(
            "discrete_taylor_check: f must tabulate all " + std::to_string(n) +
            " elements, got " + std::to_string(f.size()));
    }

    double lipschitz;
    if (h) {
        lipschitz = *h;
    } else {
        // Largest single-generator step, including the wrap-around edge.
        lipschitz = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            lipschitz =
                std::max(lipschitz, std::abs(f[(k + 1) % n] - f[k]));
        }
    }

    // First-order word expansion about the identity: f̂(r^k) = f(e) + k·Δf(e)
    // with Δf(e) = f(r) − f(e); the directed word metric gives d(e, r^k) = k.
    const double df = (n > 1 ? f[1] : f[0]) - f[0];
    TaylorCheck out;
    out.lipschitz = lipschitz;
    for (std::size_t k = 0; k < n; ++k) {
        const double predicted = f[0] + static_cast<double>(k) * df;
        const double err = std::abs(f[k] - predicted);
        const double bound = 2.0 * lipschitz * static_cast<double>(k);
        out.max_error = std::max(out.max_error, err);
        out.max_bound = std::max(out.max_bound, bound);
        if (err > bound + 1e-12) out.pointwise_ok = false;
    }
    return out;
}

} // namespace equiproj
