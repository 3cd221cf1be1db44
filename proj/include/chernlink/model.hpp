#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "chernlink/geom3.hpp"

namespace chernlink {

using Complex = std::complex<double>;

/// Complex 3-vector: the coefficient of a hopping term in the Pauli basis.
struct CVec3 {
    Complex x;
    Complex y;
    Complex z;
};

inline CVec3 conj(const CVec3& d) { return {std::conj(d.x), std::conj(d.y), std::conj(d.z)}; }

/// Coupling between unit cells `range` apart: contributes
/// e^{ik*range} d + c.c. to the chain's Bloch vector.
struct Hopping {
    int range = 1;
    CVec3 d;
};

inline constexpr int kDefaultMaxRange = 8;

/// A translation-invariant two-band chain: one real on-site vector plus a
/// finite list of complex couplings with distinct ranges.
class ChainSpec {
public:
    ChainSpec() = default;
    ChainSpec(Vec3 onsite, std::vector<Hopping> hoppings, int max_range = kDefaultMaxRange);

    const Vec3& onsite() const noexcept { return onsite_; }
    const std::vector<Hopping>& hoppings() const noexcept { return hoppings_; }
    /// Largest hopping range present (0 for a purely on-site chain).
    int range() const noexcept;

    ChainSpec with_onsite(const Vec3& onsite) const;

private:
    Vec3 onsite_;
    std::vector<Hopping> hoppings_;
};

/// r(kx, ky) = r1(kx) - r2(ky): chain1 runs along x, chain2 along y.
struct SeparableModel {
    ChainSpec chain1;
    ChainSpec chain2;

    int range() const noexcept;
};

/// Evaluates onsite + sum_n (e^{ikn} d_n + e^{-ikn} conj(d_n)) without
/// discarding the imaginary part, so reality can be checked.
CVec3 bloch_components(const ChainSpec& chain, double k);

Vec3 bloch_vector_1d(const ChainSpec& chain, double k);
/// d r / d k.
Vec3 bloch_derivative_1d(const ChainSpec& chain, double k);
Vec3 bloch_vector_2d(const SeparableModel& model, double kx, double ky);

/// Extended QWZ parameters; defaults are the reference configuration.
struct QwzParams {
    double lambda_x = 3.0;
    double lambda_y = 1.0;
    double rho_x = 3.0;
    double rho_y = 2.0;
    double mu1 = 2.0;
    double mu2 = 0.0;
};

/// r1 = (lx sin k, 0, mu1 + rx cos k), r2 = (0, -ly sin k, mu2 - ry cos k).
SeparableModel qwz_model(const QwzParams& p);
inline SeparableModel qwz_model(double lambda_x, double lambda_y, double rho_x, double rho_y,
                                double mu1, double mu2) {
    return qwz_model(QwzParams{lambda_x, lambda_y, rho_x, rho_y, mu1, mu2});
}

/// Closed form of the extended QWZ vector with mu = mu1 - mu2.
Vec3 qwz_reference(const QwzParams& p, double kx, double ky);

/// Values of mu = mu1 - mu2 where the extended QWZ gap closes: +-rho_x +- rho_y.
std::vector<double> qwz_critical_mu(const QwzParams& p);

/// Chain loop sampled on the half-step momentum grid.
LoopSamples sample_loop(const ChainSpec& chain, std::size_t n);

/// min |r(kx, ky)| over the n x n grid k = 2 pi i / n (high-symmetry points
/// included). Half the band gap.
double spectral_gap(const SeparableModel& model, int n);

struct RandomModelOptions {
    int max_ranges = 3;
    double onsite_scale = 1.0;
    double hopping_scale = 1.0;
};

ChainSpec random_chain(std::mt19937_64& rng, const RandomModelOptions& options = {});
SeparableModel random_model(std::mt19937_64& rng, const RandomModelOptions& options = {});

} // namespace chernlink
