#include "chernlink/invariants.hpp"

#include <cmath>
#include <vector>

#include "chernlink/errors.hpp"
#include "chernlink/kernels.hpp"

namespace chernlink {

namespace {

constexpr double kGapClosing = 1e-9;

void require_gapped_nodes(const SeparableModel& model, int n) {
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double kx = kTwoPi * ix / n;
            const double ky = kTwoPi * iy / n;
            const double mag = norm(bloch_vector_2d(model, kx, ky));
            if (mag < kGapClosing) throw GapClosingError(kx, ky, mag);
        }
    }
}

Complex inner(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

} // namespace

std::array<Complex, 2> lower_band_state(const Vec3& r) {
    const double mag = norm(r);
    // Two equivalent forms of the -|r| eigenvector; pick the better-conditioned one.
    const std::array<Complex, 2> north{Complex(r.x, -r.y), Complex(-(mag + r.z), 0.0)};
    const std::array<Complex, 2> south{Complex(mag - r.z, 0.0), Complex(-r.x, -r.y)};
    const auto& v = (r.z >= 0.0) ? north : south;
    const double len = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return {v[0] / len, v[1] / len};
}

double chern_quadrature(const SeparableModel& model, int n, bool scalar_only) {
    if (n < 1) throw ContractViolation("chern_quadrature: grid must be positive");
    require_gapped_nodes(model, n);

    kernels::Soa3 p(n), u(n), q(n), v(n);
    for (int i = 0; i < n; ++i) {
        const double k = loop_momentum(i, n);
        p.set(i, bloch_vector_1d(model.chain1, k));
        u.set(i, bloch_derivative_1d(model.chain1, k));
        q.set(i, bloch_vector_1d(model.chain2, k));
        v.set(i, bloch_derivative_1d(model.chain2, k));
    }
    const auto isa = scalar_only ? kernels::Isa::scalar : kernels::detect_isa();
    const auto res = kernels::pair_flux(p.view(), u.view(), q.view(), v.view(), isa);
    if (std::sqrt(res.min_dist2) < kGapClosing) {
        // Locate the offending midpoint for the error message.
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const double mag = norm(bloch_vector_2d(model, loop_momentum(ix, n), loop_momentum(iy, n)));
                if (mag < kGapClosing) throw GapClosingError(loop_momentum(ix, n), loop_momentum(iy, n), mag);
            }
        }
    }
    const double dk = kTwoPi / n;
    return res.sum * dk * dk / (4.0 * std::numbers::pi);
}

LatticeChern chern_lattice_detail(const SeparableModel& model, int n, double flux_limit, const GaugeFn& gauge) {
    if (n < 2) throw ContractViolation("chern_lattice: grid must be at least 2");
    std::vector<std::array<Complex, 2>> states(static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double kx = kTwoPi * ix / n;
            const double ky = kTwoPi * iy / n;
            const Vec3 r = bloch_vector_2d(model, kx, ky);
            const double mag = norm(r);
            if (mag < kGapClosing) throw GapClosingError(kx, ky, mag);
            auto s = lower_band_state(r);
            if (gauge) {
                const Complex g = gauge(ix, iy);
                s = {s[0] * g, s[1] * g};
            }
            states[static_cast<std::size_t>(iy) * n + ix] = s;
        }
    }
    auto at = [&](int ix, int iy) -> const std::array<Complex, 2>& {
        return states[static_cast<std::size_t>(iy % n) * n + (ix % n)];
    };

    LatticeChern out;
    double total = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        double row = 0.0;
        for (int ix = 0; ix < n; ++ix) {
            // Counter-clockwise loop k -> k+x -> k+x+y -> k+y -> k.
            const Complex loop = inner(at(ix, iy), at(ix + 1, iy)) * inner(at(ix + 1, iy), at(ix + 1, iy + 1)) *
                                 inner(at(ix + 1, iy + 1), at(ix, iy + 1)) * inner(at(ix, iy + 1), at(ix, iy));
            const double flux = std::arg(loop);
            out.max_flux = std::max(out.max_flux, std::abs(flux));
            row += flux;
        }
        total += row;
    }
    if (out.max_flux > flux_limit) throw GridTooCoarseError(n, out.max_flux);

    out.raw = total / kTwoPi;
    out.chern = static_cast<int>(std::lround(out.raw));
    return out;
}

int chern_lattice(const SeparableModel& model, int n, double flux_limit) {
    return chern_lattice_detail(model, n, flux_limit).chern;
}

double linking_static(const SeparableModel& model, int n, double touch_tolerance, bool scalar_only) {
    const auto a = sample_loop(model.chain1, static_cast<std::size_t>(n));
    const auto b = sample_loop(model.chain2, static_cast<std::size_t>(n));
    return gauss_linking(a, b, LinkingOptions{touch_tolerance, scalar_only});
}

bool InvariantReport::consistent() const {
    return std::abs(chern_quadrature - chern_lattice) < 0.1 && std::abs(linking_static - chern_lattice) < 0.1;
}

InvariantReport compute_invariants(const SeparableModel& model, const InvariantOptions& options) {
    InvariantReport rep;
    rep.grid_used = options.lattice_grid;
    rep.gap = spectral_gap(model, options.lattice_grid);
    if (rep.gap < kGapClosing) {
        // Report the first gapless node.
        require_gapped_nodes(model, options.lattice_grid);
    }
    rep.chern_lattice = chern_lattice(model, options.lattice_grid, options.flux_limit);
    rep.chern_quadrature = chern_quadrature(model, options.quadrature_grid);
    rep.linking_static = linking_static(model, options.loop_samples, options.touch_tolerance);
    return rep;
}

} // namespace chernlink
