#pragma once

#include <array>
#include <functional>
#include <numbers>

#include "chernlink/model.hpp"

namespace chernlink {

/// Optional per-grid-point phase applied to lower-band eigenvectors; used to
/// check gauge independence of the lattice method.
using GaugeFn = std::function<Complex(int ix, int iy)>;

/// Lower-band eigenvector of r.sigma (eigenvalue -|r|), normalized. The
/// gauge is chosen for numerical stability and may jump between points.
std::array<Complex, 2> lower_band_state(const Vec3& r);

/// Midpoint-rule Brillouin-zone quadrature of
///   c = (1/4pi) sum (r1 - r2) . (dr1/dkx x dr2/dky) / |r1 - r2|^3 dkx dky
/// on the half-step n x n grid. Throws GapClosingError if |r| < 1e-9 on
/// either the node grid or the midpoint grid.
double chern_quadrature(const SeparableModel& model, int n, bool scalar_only = false);

struct LatticeChern {
    int chern = 0;
    /// Largest |plaquette flux| encountered, radians.
    double max_flux = 0.0;
    /// Raw flux sum / 2pi before rounding (integer up to roundoff).
    double raw = 0.0;
};

/// Plaquette Berry-flux (link variable) Chern number of the lower band on
/// the n x n grid k = 2 pi i / n. Throws GapClosingError on gapless grid
/// points and GridTooCoarseError if any plaquette flux exceeds flux_limit.
LatticeChern chern_lattice_detail(const SeparableModel& model, int n,
                                  double flux_limit = 0.9 * std::numbers::pi, const GaugeFn& gauge = {});
int chern_lattice(const SeparableModel& model, int n, double flux_limit = 0.9 * std::numbers::pi);

/// Gauss linking number of the two chain loops sampled with n points each.
double linking_static(const SeparableModel& model, int n, double touch_tolerance = 1e-6,
                      bool scalar_only = false);

struct InvariantOptions {
    int quadrature_grid = 200;
    int lattice_grid = 50;
    int loop_samples = 400;
    double touch_tolerance = 1e-6;
    double gap_min = 1e-3;
    double flux_limit = 0.9 * std::numbers::pi;
};

struct InvariantReport {
    double chern_quadrature = 0.0;
    int chern_lattice = 0;
    double linking_static = 0.0;
    int grid_used = 0;
    double gap = 0.0;

    /// The three routes agree to 0.1 (only meaningful when gap > gap_min).
    bool consistent() const;
};

/// Runs all three routes. Gap-closing inputs throw before any route runs.
InvariantReport compute_invariants(const SeparableModel& model, const InvariantOptions& options = {});

} // namespace chernlink
