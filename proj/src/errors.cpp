#include "chernlink/errors.hpp"

#include <cstdio>

namespace chernlink {

namespace {
std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}
} // namespace

GapClosingError::GapClosingError(double kx, double ky, double magnitude)
    : PhysicsError(fmt("gap closing: |r| = %.3g at (kx, ky) = (%.6g, %.6g)", magnitude, kx, ky)),
      kx_(kx),
      ky_(ky),
      magnitude_(magnitude) {}

NearCriticalLoopsError::NearCriticalLoopsError(double min_distance)
    : PhysicsError(fmt("near-critical loops: minimum distance %.3g", min_distance)),
      min_distance_(min_distance) {}

GridTooCoarseError::GridTooCoarseError(int grid, double max_flux)
    : PhysicsError(fmt("grid too coarse: plaquette flux %.4g rad on a %g-point grid", max_flux,
                       static_cast<double>(grid))),
      grid_(grid),
      max_flux_(max_flux) {}

} // namespace chernlink
