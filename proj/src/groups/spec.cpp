#include "equiproj/groups.hpp"

#include "equiproj/errors.hpp"
#include "equiproj/numerics.hpp"

#include <cmath>
#include <string>

namespace equiproj {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_generator_shapes(const std::vector<DenseMatrix>& gens,
                            const char* which) {
    if (gens.empty()) return;
    const std::size_t d = gens.front().rows;
    for (const auto& g : gens) {
        if (!g.square() || g.rows != d) {
            throw shape_error(std::string("GroupSpec: ") + which +
                              " must share one square shape");
        }
    }
}

std::size_t word_of(const std::vector<double>& coords, std::size_t order) {
    if (coords.size() != 1) {
        throw invalid_input_error(
            "GroupSpec: discrete elements take a single word count");
    }
    const double k = coords[0];
    if (!(k >= 0.0) || std::abs(k - std::round(k)) > 1e-9) {
        throw invalid_input_error(
            "GroupSpec: word count must be a non-negative integer");
    }
    return static_cast<std::size_t>(std::llround(k)) % order;
}

// (S^k x)_i = x_{(i+k) mod n}, built directly so powers stay exact.
DenseMatrix circulant_shift_power(std::size_t n, std::size_t k) {
    DenseMatrix s(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        s.at(i, (i + k) % n) = 1.0;
    }
    return s;
}

} // namespace

std::string group_kind_name(GroupKind kind) {
    switch (kind) {
        case GroupKind::so2: return "so2";
        case GroupKind::so3: return "so3";
        case GroupKind::so_n: return "so_n";
        case GroupKind::cyclic_grid: return "cyclic_grid";
        case GroupKind::shift_circulant: return "shift_circulant";
        case GroupKind::cyclic_vec: return "cyclic_vec";
        case GroupKind::custom: return "custom";
    }
    return "custom";
}

std::size_t GroupSpec::dim_in() const {
    if (generators_in.empty()) {
        throw invalid_input_error("GroupSpec: no input generators");
    }
    return generators_in.front().rows;
}

std::size_t GroupSpec::dim_out() const {
    if (!has_output_rep()) {
        throw invalid_input_error("GroupSpec: no output representation");
    }
    return generators_out.front().rows;
}

DenseMatrix GroupSpec::rho_in(const std::vector<double>& coords) const {
    if (continuous) {
        if (coords.size() != n_g()) {
            throw invalid_input_error(
                "GroupSpec: expected " + std::to_string(n_g()) +
                " coordinates, got " + std::to_string(coords.size()));
        }
        DenseMatrix a(dim_in(), dim_in(), 0.0);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            a = a + coords[i] * generators_in[i];
        }
        return expm(a);
    }
    if (cyclic_order == 0) {
        throw invalid_input_error("GroupSpec: discrete spec without order");
    }
    const std::size_t k = word_of(coords, cyclic_order);
    switch (kind) {
        case GroupKind::cyclic_vec:
            return rotation2(2.0 * kPi * static_cast<double>(k) /
                             static_cast<double>(cyclic_order));
        case GroupKind::shift_circulant:
            return circulant_shift_power(dim_in(), k);
        case GroupKind::cyclic_grid:
            return grid_rotation_rep(grid_side,
                                     2.0 * kPi * static_cast<double>(k) /
                                         static_cast<double>(cyclic_order),
                                     grid_interp);
        default:
            throw invalid_input_error(
                "GroupSpec: no representation rule for this discrete kind");
    }
}

DenseMatrix GroupSpec::rho_out(const std::vector<double>& coords) const {
    if (!has_output_rep()) {
        throw invalid_input_error("GroupSpec: no output representation");
    }
    // Catalog equivariance specs act by the same representation on both
    // sides; a custom spec with distinct output generators must be
    // continuous, where the exponential applies.
    if (continuous) {
        if (coords.size() != n_g()) {
            throw invalid_input_error(
                "GroupSpec: expected " + std::to_string(n_g()) +
                " coordinates, got " + std::to_string(coords.size()));
        }
        DenseMatrix a(dim_out(), dim_out(), 0.0);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            a = a + coords[i] * generators_out[i];
        }
        return expm(a);
    }
    return rho_in(coords); // discrete equal-output specs
}

GroupSpec so2_spec() {
    GroupSpec s;
    s.kind = GroupKind::so2;
    s.continuous = true;
    s.label = "so2";
    s.generators_in = {so2_generator()};
    s.r_g = kPi;
    return s;
}

GroupSpec so3_spec() {
    GroupSpec s;
    s.kind = GroupKind::so3;
    s.continuous = true;
    s.label = "so3";
    s.generators_in = so3_generators();
    s.r_g = kPi;
    return s;
}

GroupSpec so_n_spec(std::size_t n) {
    GroupSpec s;
    s.kind = GroupKind::so_n;
    s.continuous = true;
    s.label = "so" + std::to_string(n);
    s.generators_in = so_n_generators(n);
    s.r_g = kPi;
    return s;
}

GroupSpec cyclic_grid_spec(std::size_t side, std::size_t n_rot) {
    if (n_rot == 0) {
        throw invalid_input_error("cyclic_grid_spec: n_rot must be positive");
    }
    GroupSpec s;
    s.kind = GroupKind::cyclic_grid;
    s.continuous = false;
    s.label = "c" + std::to_string(n_rot) + "_grid" + std::to_string(side);
    s.cyclic_order = n_rot;
    s.grid_side = side;
    s.grid_interp = (n_rot == 1 || n_rot == 2 || n_rot == 4)
                        ? Interp::nearest
                        : Interp::bilinear;
    s.generators_in = {forward_difference(s.rho_in({1.0}))};
    s.r_g = 0.0;
    return s;
}

GroupSpec cyclic_vec_spec(std::size_t n) {
    if (n == 0) {
        throw invalid_input_error("cyclic_vec_spec: n must be positive");
    }
    GroupSpec s;
    s.kind = GroupKind::cyclic_vec;
    s.continuous = false;
    s.label = "c" + std::to_string(n) + "_vec";
    s.cyclic_order = n;
    s.generators_in = {forward_difference(rotation2(2.0 * kPi / n))};
    s.r_g = 0.0;
    return s;
}

GroupSpec shift_circulant_spec(std::size_t n) {
    if (n == 0) {
        throw invalid_input_error("shift_circulant_spec: n must be positive");
    }
    GroupSpec s;
    s.kind = GroupKind::shift_circulant;
    s.continuous = false;
    s.label = "shift" + std::to_string(n);
    s.cyclic_order = n;
    s.generators_in = {forward_difference(circulant_shift(n))};
    s.r_g = 0.0;
    return s;
}

GroupSpec custom_spec(std::vector<DenseMatrix> generators_in, double r_g,
                      std::string label,
                      std::vector<DenseMatrix> generators_out) {
    if (generators_in.empty()) {
        throw invalid_input_error("custom_spec: needs at least one generator");
    }
    if (!(r_g > 0.0)) {
        throw invalid_input_error("custom_spec: r_g must be positive");
    }
    check_generator_shapes(generators_in, "generators_in");
    check_generator_shapes(generators_out, "generators_out");
    if (!generators_out.empty() &&
        generators_out.size() != generators_in.size()) {
        throw invalid_input_error(
            "custom_spec: generators_out count must match generators_in");
    }
    GroupSpec s;
    s.kind = GroupKind::custom;
    s.continuous = true;
    s.label = std::move(label);
    s.generators_in = std::move(generators_in);
    s.generators_out = std::move(generators_out);
    s.r_g = r_g;
    return s;
}

GroupSpec with_equal_output(GroupSpec spec) {
    spec.generators_out = spec.generators_in;
    return spec;
}

} // namespace equiproj
