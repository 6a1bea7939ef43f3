#include "equiproj/groups.hpp"

#include "equiproj/errors.hpp"

#include <cmath>

namespace equiproj {

namespace {

// Rotations by multiples of 90° must come out as exact permutations, so snap
// cos/sin to integers when they are within round-off of one.
double snap(double x) {
    const double r = std::round(x);
    return std::abs(x - r) < 1e-9 ? r : x;
}

} // namespace

DenseMatrix grid_rotation_rep(std::size_t k, double theta, Interp interp) {
    if (k < 2) throw invalid_input_error("grid_rotation_rep: k must be ≥ 2");

    const double c = snap(std::cos(theta));
    const double s = snap(std::sin(theta));
    const double center = 0.5 * static_cast<double>(k - 1);
    const std::size_t d = k * k;
    DenseMatrix m(d, d, 0.0);

    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t col = 0; col < k; ++col) {
            const std::size_t dst = r * k + col;
            // Pre-image of the destination pixel under the rotation
            // (rotate by −theta about the center).
            const double dr = static_cast<double>(r) - center;
            const double dc = static_cast<double>(col) - center;
            const double src_r = c * dr + s * dc + center;
            const double src_c = -s * dr + c * dc + center;

            if (interp == Interp::nearest) {
                const long rr = std::lround(src_r);
                const long cc = std::lround(src_c);
                if (rr >= 0 && cc >= 0 && rr < static_cast<long>(k) &&
                    cc < static_cast<long>(k)) {
                    m.at(dst, static_cast<std::size_t>(rr) * k +
                                  static_cast<std::size_t>(cc)) = 1.0;
                }
            } else {
                const double fr = std::floor(src_r);
                const double fc = std::floor(src_c);
                const double wr = src_r - fr;
                const double wc = src_c - fc;
                const long r0 = static_cast<long>(fr);
                const long c0 = static_cast<long>(fc);
                const double weights[2][2] = {
                    {(1.0 - wr) * (1.0 - wc), (1.0 - wr) * wc},
                    {wr * (1.0 - wc), wr * wc},
                };
                for (int dr2 = 0; dr2 < 2; ++dr2) {
                    for (int dc2 = 0; dc2 < 2; ++dc2) {
                        const long rr = r0 + dr2;
                        const long cc = c0 + dc2;
                        const double w = weights[dr2][dc2];
                        if (w != 0.0 && rr >= 0 && cc >= 0 &&
                            rr < static_cast<long>(k) &&
                            cc < static_cast<long>(k)) {
                            m.at(dst, static_cast<std::size_t>(rr) * k +
                                          static_cast<std::size_t>(cc)) += w;
                        }
                    }
                }
            }
        }
    }
    return m;
}

} // namespace equiproj
