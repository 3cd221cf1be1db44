#include "chernlink/geom3.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "chernlink/errors.hpp"
#include "chernlink/kernels.hpp"

namespace chernlink {

Vec3 rotate_about_axis(const Vec3& v, const Vec3& axis, double angle) {
    if (std::abs(norm(axis) - 1.0) > 1e-12) {
        throw ContractViolation("rotate_about_axis: axis must be a unit vector (|axis| = " +
                                std::to_string(norm(axis)) + ")");
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double along = dot(axis, v);
    return v * c + cross(axis, v) * s + axis * (along * (1.0 - c));
}

LoopSamples::LoopSamples(std::vector<Vec3> points) : points_(std::move(points)) {
    if (points_.size() < 3) {
        throw ContractViolation("LoopSamples: a closed loop needs at least 3 points, got " +
                                std::to_string(points_.size()));
    }
    for (const auto& p : points_) {
        if (!is_finite(p)) throw ContractViolation("LoopSamples: non-finite point");
    }
}

LoopSamples LoopSamples::reversed() const {
    std::vector<Vec3> pts(points_.rbegin(), points_.rend());
    return LoopSamples(std::move(pts));
}

LoopSamples LoopSamples::transformed(const Vec3& axis, double angle, const Vec3& shift) const {
    std::vector<Vec3> pts;
    pts.reserve(points_.size());
    for (const auto& p : points_) pts.push_back(rotate_about_axis(p, axis, angle) + shift);
    return LoopSamples(std::move(pts));
}

double min_pairwise_distance(const LoopSamples& a, const LoopSamples& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points()) {
        for (const auto& q : b.points()) {
            const Vec3 d = p - q;
            best = std::min(best, dot(d, d));
        }
    }
    return std::sqrt(best);
}

namespace {

// Segment midpoints and segment vectors of a closed polygon.
void segments(const LoopSamples& loop, kernels::Soa3& mid, kernels::Soa3& step) {
    const std::size_t n = loop.size();
    mid = kernels::Soa3(n);
    step = kernels::Soa3(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& p0 = loop[i];
        const Vec3& p1 = loop[(i + 1) % n];
        mid.set(i, (p0 + p1) * 0.5);
        step.set(i, p1 - p0);
    }
}

} // namespace

double gauss_linking(const LoopSamples& a, const LoopSamples& b, const LinkingOptions& options) {
    const double d_min = min_pairwise_distance(a, b);
    if (!(d_min > options.touch_tolerance)) throw NearCriticalLoopsError(d_min);

    kernels::Soa3 pa, da, pb, db;
    segments(a, pa, da);
    segments(b, pb, db);
    const auto isa = options.scalar_only ? kernels::Isa::scalar : kernels::detect_isa();
    const auto res = kernels::pair_flux(pa.view(), da.view(), pb.view(), db.view(), isa);
    return res.sum / (4.0 * std::numbers::pi);
}

} // namespace chernlink
