#pragma once

// Shared fixtures and test-only oracles. Nothing here calls the code paths
// it is used to check.

#include <cmath>
#include <random>
#include <vector>

#include "chernlink/geom3.hpp"
#include "chernlink/model.hpp"

namespace chernlink::testing {

inline constexpr double kPi = 3.14159265358979323846;

/// Reference configuration: lambda_x = rho_x = 3, lambda_y = 1, rho_y = 2.
inline QwzParams reference_qwz(double mu1, double mu2 = 0.0) { return {3.0, 1.0, 3.0, 2.0, mu1, mu2}; }

inline double max_abs_diff(const Vec3& a, const Vec3& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

inline Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec3 v{g(rng), g(rng), g(rng)};
    return v / norm(v);
}

/// Circle of given radius about `centre` in the plane spanned by e1, e2
/// (orientation e1 -> e2).
inline LoopSamples circle(const Vec3& centre, const Vec3& e1, const Vec3& e2, double radius, std::size_t n) {
    return LoopSamples::sample([&](double t) { return centre + e1 * (radius * std::cos(t)) + e2 * (radius * std::sin(t)); },
                               n);
}

/// Linking number by signed crossings of a planar projection: project along
/// z after a fixed generic rotation, and for each crossing of a segment of
/// `a` with a segment of `b` add +-1/2. With `a` over `b` the crossing sign is
/// sgn((da x db).z); with `b` over `a` it is sgn((db x da).z).
inline int crossing_linking_number(const LoopSamples& a_in, const LoopSamples& b_in) {
    const Vec3 axis = Vec3{0.3, -0.5, 0.81} / norm(Vec3{0.3, -0.5, 0.81});
    const LoopSamples a = a_in.transformed(axis, 0.777, {});
    const LoopSamples b = b_in.transformed(axis, 0.777, {});
    int twice = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec3 a0 = a[i], a1 = a[(i + 1) % a.size()];
        const Vec3 da = a1 - a0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Vec3 b0 = b[j], b1 = b[(j + 1) % b.size()];
            const Vec3 db = b1 - b0;
            const double den = da.x * db.y - da.y * db.x;
            if (den == 0.0) continue;
            const double ox = b0.x - a0.x, oy = b0.y - a0.y;
            const double s = (ox * db.y - oy * db.x) / den;
            const double t = (ox * da.y - oy * da.x) / den;
            if (s < 0.0 || s >= 1.0 || t < 0.0 || t >= 1.0) continue;
            const double za = a0.z + s * da.z;
            const double zb = b0.z + t * db.z;
            const double sg = den > 0.0 ? 1.0 : -1.0;
            twice += za > zb ? static_cast<int>(sg) : -static_cast<int>(sg);
        }
    }
    return twice / 2;
}

/// Random model whose gap exceeds `min_gap`. For a separable model the gap
/// min |r1(kx) - r2(ky)| is the distance between the two loops, measured on
/// 1024 samples each (spacing well below any gap of interest).
inline SeparableModel random_gapped_model(std::mt19937_64& rng, double min_gap, const RandomModelOptions& opts = {}) {
    while (true) {
        auto m = random_model(rng, opts);
        if (min_pairwise_distance(sample_loop(m.chain1, 1024), sample_loop(m.chain2, 1024)) > min_gap) return m;
    }
}

} // namespace chernlink::testing
