#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace chernlink {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3& operator+=(const Vec3& o) noexcept {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) noexcept {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) noexcept {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) noexcept { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) noexcept {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) noexcept { return norm(a - b); }
inline bool is_finite(const Vec3& a) noexcept {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Rodrigues rotation of `v` by `angle` about the unit vector `axis`
/// (right-hand rule). Throws ContractViolation if `axis` is not unit length
/// within 1e-12.
Vec3 rotate_about_axis(const Vec3& v, const Vec3& axis, double angle);

/// Momentum attached to sample `i` of an `n`-point loop: 2*pi*(i + 1/2)/n.
/// The half-step offset keeps k = 0 and k = pi off the grid.
inline double loop_momentum(std::size_t i, std::size_t n) noexcept {
    return kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
}

/// A closed, oriented polygon in auxiliary space. Orientation follows index
/// order and the segment (n-1 -> 0) closes the curve.
class LoopSamples {
public:
    explicit LoopSamples(std::vector<Vec3> points);

    /// Samples `curve(k)` on the half-step grid of [0, 2pi).
    template <class Curve>
    static LoopSamples sample(Curve&& curve, std::size_t n) {
        std::vector<Vec3> pts;
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pts.push_back(curve(loop_momentum(i, n)));
        return LoopSamples(std::move(pts));
    }

    std::size_t size() const noexcept { return points_.size(); }
    const Vec3& operator[](std::size_t i) const noexcept { return points_[i]; }
    std::span<const Vec3> points() const noexcept { return points_; }

    LoopSamples reversed() const;
    /// Applies p -> R p + shift to every point, R = rotation about `axis` by `angle`.
    LoopSamples transformed(const Vec3& axis, double angle, const Vec3& shift) const;

private:
    std::vector<Vec3> points_;
};

/// Minimum Euclidean distance over all pairs of sample points.
double min_pairwise_distance(const LoopSamples& a, const LoopSamples& b);

struct LinkingOptions {
    /// Loops closer than this are rejected: the Gauss kernel diverges as 1/d^2.
    double touch_tolerance = 1e-6;
    /// Use the scalar reference kernel even when a SIMD kernel is available.
    bool scalar_only = false;
};

/// Discrete Gauss linking integral
///   (1/4pi) sum_i sum_j (a_i - b_j) . (da_i x db_j) / |a_i - b_j|^3
/// over segment midpoints a_i, b_j and segment vectors da_i, db_j.
/// Symmetric in (a, b); reversing one loop flips the sign.
/// Throws NearCriticalLoopsError when the loops come within the touch tolerance.
double gauss_linking(const LoopSamples& a, const LoopSamples& b, const LinkingOptions& options = {});

} // namespace chernlink
