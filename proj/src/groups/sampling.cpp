#include "equiproj/groups.hpp"

#include "equiproj/errors.hpp"

#include <cmath>
#include <random>

namespace equiproj {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> gaussian_direction(std::size_t n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& e : v) {
            e = gauss(rng);
            norm += e * e;
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& e : v) e /= norm;
    return v;
}

// Rotation-invariant (Haar) sampling on SO(3) in axis–angle coordinates:
// uniform axis, angle density proportional to 1 − cos θ on [0, π], realized
// by rejection from the uniform angle.
std::vector<double> haar_so3_coords(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double theta = 0.0;
    for (;;) {
        theta = kPi * unit(rng);
        const double accept = 0.5 * (1.0 - std::cos(theta));
        if (unit(rng) <= accept) break;
    }
    std::vector<double> axis = gaussian_direction(3, rng);
    for (auto& e : axis) e *= theta;
    return axis;
}

std::vector<double> ball_coords(std::size_t n, double radius, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v = gaussian_direction(n, rng);
    const double r =
        radius * std::pow(unit(rng), 1.0 / static_cast<double>(n));
    for (auto& e : v) e *= r;
    return v;
}

} // namespace

Subset Subset::cube(double radius) {
    Subset s;
    s.shape = Shape::cube;
    s.intervals = {{-radius, radius}};
    return s;
}

Subset Subset::interval(double lo, double hi) {
    Subset s;
    s.shape = Shape::cube;
    s.intervals = {{lo, hi}};
    return s;
}

Subset Subset::point(std::vector<double> coords) {
    Subset s;
    s.shape = Shape::cube;
    s.intervals.reserve(coords.size());
    for (double c : coords) s.intervals.emplace_back(c, c);
    return s;
}

Subset Subset::ball(double radius) {
    Subset s;
    s.shape = Shape::ball;
    s.intervals = {{-radius, radius}};
    return s;
}

Subset Subset::word_set(std::vector<std::size_t> words) {
    Subset s;
    s.words = std::move(words);
    return s;
}

GroupElement element_at(const GroupSpec& spec, std::vector<double> coords) {
    GroupElement g;
    g.matrix_in = spec.rho_in(coords);
    if (spec.has_output_rep()) g.matrix_out = spec.rho_out(coords);
    g.coords = std::move(coords);
    return g;
}

GroupElement sample_element(const GroupSpec& spec, Rng& rng) {
    if (!spec.continuous) {
        if (spec.cyclic_order == 0) {
            throw invalid_input_error("sample_element: discrete spec without order");
        }
        std::uniform_int_distribution<std::size_t> w(0, spec.cyclic_order - 1);
        return element_at(spec, {static_cast<double>(w(rng))});
    }
    if (spec.kind == GroupKind::so3) {
        return element_at(spec, haar_so3_coords(rng));
    }
    std::uniform_real_distribution<double> coord(-spec.r_g, spec.r_g);
    std::vector<double> t(spec.n_g());
    for (auto& e : t) e = coord(rng);
    return element_at(spec, t);
}

GroupElement sample_element_in(const GroupSpec& spec, const Subset& subset,
                               Rng& rng) {
    if (!spec.continuous) {
        if (subset.words.empty()) {
            throw invalid_input_error("sample_element_in: empty word set");
        }
        std::uniform_int_distribution<std::size_t> pick(0, subset.words.size() - 1);
        return element_at(
            spec, {static_cast<double>(subset.words[pick(rng)])});
    }

    if (subset.intervals.empty()) {
        throw invalid_input_error("sample_element_in: empty subset");
    }
    const double slack = 1e-12 + 1e-12 * spec.r_g;
    for (const auto& [lo, hi] : subset.intervals) {
        if (lo > hi) {
            throw invalid_input_error("sample_element_in: interval with lo > hi");
        }
        if (lo < -spec.r_g - slack || hi > spec.r_g + slack) {
            throw invalid_input_error(
                "sample_element_in: subset exceeds the generator radius r_G");
        }
    }

    if (subset.shape == Subset::Shape::ball) {
        const double radius = subset.intervals.front().second;
        return element_at(spec, ball_coords(spec.n_g(), radius, rng));
    }

    if (subset.intervals.size() != 1 && subset.intervals.size() != spec.n_g()) {
        throw invalid_input_error(
            "sample_element_in: interval count must be 1 or n_G");
    }
    std::vector<double> t(spec.n_g());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& [lo, hi] =
            subset.intervals[subset.intervals.size() == 1 ? 0 : i];
        if (lo == hi) {
            t[i] = lo;
        } else {
            std::uniform_real_distribution<double> coord(lo, hi);
            t[i] = coord(rng);
        }
    }
    return element_at(spec, t);
}

} // namespace equiproj
