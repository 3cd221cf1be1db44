#include <algorithm>
#include <cmath>
#include <limits>

#include "chernlink/kernels.hpp"

namespace chernlink::kernels {

Soa3::Soa3(std::span<const Vec3> points) : Soa3(points.size()) {
    for (std::size_t i = 0; i < points.size(); ++i) set(i, points[i]);
}

PairFluxResult pair_flux_scalar(Soa3View p, Soa3View u, Soa3View q, Soa3View v) {
    const std::size_t n = p.size();
    const std::size_t m = q.size();
    double total = 0.0;
    double min_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double px = p.x[i], py = p.y[i], pz = p.z[i];
        const double ux = u.x[i], uy = u.y[i], uz = u.z[i];
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double dx = px - q.x[j];
            const double dy = py - q.y[j];
            const double dz = pz - q.z[j];
            // u x v
            const double cx = uy * v.z[j] - uz * v.y[j];
            const double cy = uz * v.x[j] - ux * v.z[j];
            const double cz = ux * v.y[j] - uy * v.x[j];
            const double d2 = dx * dx + dy * dy + dz * dz;
            min_d2 = std::min(min_d2, d2);
            row += (dx * cx + dy * cy + dz * cz) / (d2 * std::sqrt(d2));
        }
        total += row;
    }
    return {total, min_d2};
}

} // namespace chernlink::kernels
