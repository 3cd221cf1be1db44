#pragma once

// Pair-flux double sum shared by the Gauss linking integral and the
// Brillouin-zone quadrature of the Chern number:
//
//   S = sum_i sum_j (p_i - q_j) . (u_i x v_j) / |p_i - q_j|^3
//
// A scalar reference kernel is always built. An AVX2/FMA kernel is built on
// x86-64 and selected at runtime when the CPU supports it. Results of the two
// paths differ only by floating-point reassociation (relative 1e-12).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "chernlink/geom3.hpp"

namespace chernlink::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// True when the AVX2 kernel was compiled in and the running CPU supports it.
bool avx2_available() noexcept;

/// Best kernel available on this machine.
Isa detect_isa() noexcept;

/// Structure-of-arrays view over a set of 3-vectors.
struct Soa3View {
    std::span<const double> x;
    std::span<const double> y;
    std::span<const double> z;

    std::size_t size() const noexcept { return x.size(); }
};

/// Owning structure-of-arrays buffer.
class Soa3 {
public:
    Soa3() = default;
    explicit Soa3(std::size_t n) : x_(n), y_(n), z_(n) {}
    explicit Soa3(std::span<const Vec3> points);

    void set(std::size_t i, const Vec3& v) noexcept {
        x_[i] = v.x;
        y_[i] = v.y;
        z_[i] = v.z;
    }
    std::size_t size() const noexcept { return x_.size(); }
    Soa3View view() const noexcept { return {x_, y_, z_}; }

private:
    std::vector<double> x_, y_, z_;
};

struct PairFluxResult {
    double sum = 0.0;
    /// Smallest |p_i - q_j|^2 encountered.
    double min_dist2 = 0.0;
};

/// Row-ordered reduction: each row i is summed over j, rows are accumulated
/// in increasing i. Deterministic for a fixed Isa.
PairFluxResult pair_flux_scalar(Soa3View p, Soa3View u, Soa3View q, Soa3View v);

#if defined(CHERNLINK_WITH_AVX2)
PairFluxResult pair_flux_avx2(Soa3View p, Soa3View u, Soa3View q, Soa3View v);
#endif

/// Dispatches to the requested kernel; requesting avx2 on a machine without
/// it falls back to scalar.
PairFluxResult pair_flux(Soa3View p, Soa3View u, Soa3View q, Soa3View v, Isa isa = detect_isa());

} // namespace chernlink::kernels
