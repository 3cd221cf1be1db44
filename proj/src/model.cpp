#include "chernlink/model.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "chernlink/errors.hpp"

namespace chernlink {

ChainSpec::ChainSpec(Vec3 onsite, std::vector<Hopping> hoppings, int max_range)
    : onsite_(onsite), hoppings_(std::move(hoppings)) {
    if (!is_finite(onsite_)) throw ContractViolation("ChainSpec: non-finite on-site vector");
    std::set<int> seen;
    for (const auto& h : hoppings_) {
        if (h.range < 1 || h.range > max_range) {
            throw ContractViolation("ChainSpec: hopping range " + std::to_string(h.range) +
                                    " outside [1, " + std::to_string(max_range) + "]");
        }
        if (!seen.insert(h.range).second) {
            throw ContractViolation("ChainSpec: duplicate hopping range " + std::to_string(h.range));
        }
    }
    std::sort(hoppings_.begin(), hoppings_.end(),
              [](const Hopping& a, const Hopping& b) { return a.range < b.range; });
}

int ChainSpec::range() const noexcept {
    return hoppings_.empty() ? 0 : hoppings_.back().range;
}

ChainSpec ChainSpec::with_onsite(const Vec3& onsite) const {
    ChainSpec copy = *this;
    copy.onsite_ = onsite;
    return copy;
}

int SeparableModel::range() const noexcept { return std::max(chain1.range(), chain2.range()); }

CVec3 bloch_components(const ChainSpec& chain, double k) {
    CVec3 r{chain.onsite().x, chain.onsite().y, chain.onsite().z};
    for (const auto& h : chain.hoppings()) {
        const Complex fwd = std::polar(1.0, k * h.range);
        const Complex bwd = std::polar(1.0, -k * h.range);
        r.x += fwd * h.d.x + bwd * std::conj(h.d.x);
        r.y += fwd * h.d.y + bwd * std::conj(h.d.y);
        r.z += fwd * h.d.z + bwd * std::conj(h.d.z);
    }
    return r;
}

Vec3 bloch_vector_1d(const ChainSpec& chain, double k) {
    // e^{ikn} d + c.c. = 2 Re(e^{ikn} d)
    Vec3 r = chain.onsite();
    for (const auto& h : chain.hoppings()) {
        const Complex phase = std::polar(1.0, k * h.range);
        r.x += 2.0 * (phase * h.d.x).real();
        r.y += 2.0 * (phase * h.d.y).real();
        r.z += 2.0 * (phase * h.d.z).real();
    }
    return r;
}

Vec3 bloch_derivative_1d(const ChainSpec& chain, double k) {
    Vec3 r;
    for (const auto& h : chain.hoppings()) {
        const Complex phase = Complex(0.0, h.range) * std::polar(1.0, k * h.range);
        r.x += 2.0 * (phase * h.d.x).real();
        r.y += 2.0 * (phase * h.d.y).real();
        r.z += 2.0 * (phase * h.d.z).real();
    }
    return r;
}

Vec3 bloch_vector_2d(const SeparableModel& model, double kx, double ky) {
    return bloch_vector_1d(model.chain1, kx) - bloch_vector_1d(model.chain2, ky);
}

SeparableModel qwz_model(const QwzParams& p) {
    const Complex i(0.0, 1.0);
    ChainSpec chain1({0.0, 0.0, p.mu1}, {Hopping{1, CVec3{-i * p.lambda_x / 2.0, 0.0, p.rho_x / 2.0}}});
    ChainSpec chain2({0.0, 0.0, p.mu2}, {Hopping{1, CVec3{0.0, i * p.lambda_y / 2.0, -p.rho_y / 2.0}}});
    return {std::move(chain1), std::move(chain2)};
}

Vec3 qwz_reference(const QwzParams& p, double kx, double ky) {
    const double mu = p.mu1 - p.mu2;
    return {p.lambda_x * std::sin(kx), p.lambda_y * std::sin(ky),
            mu + p.rho_x * std::cos(kx) + p.rho_y * std::cos(ky)};
}

std::vector<double> qwz_critical_mu(const QwzParams& p) {
    std::vector<double> out;
    for (double sx : {-1.0, 1.0}) {
        for (double sy : {-1.0, 1.0}) out.push_back(sx * p.rho_x + sy * p.rho_y);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LoopSamples sample_loop(const ChainSpec& chain, std::size_t n) {
    return LoopSamples::sample([&](double k) { return bloch_vector_1d(chain, k); }, n);
}

double spectral_gap(const SeparableModel& model, int n) {
    if (n < 1) throw ContractViolation("spectral_gap: grid must be positive");
    std::vector<Vec3> r1(n), r2(n);
    for (int i = 0; i < n; ++i) {
        const double k = kTwoPi * i / n;
        r1[i] = bloch_vector_1d(model.chain1, k);
        r2[i] = bloch_vector_1d(model.chain2, k);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : r1) {
        for (const auto& b : r2) best = std::min(best, distance(a, b));
    }
    return best;
}

ChainSpec random_chain(std::mt19937_64& rng, const RandomModelOptions& options) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> count(1, options.max_ranges);
    const Vec3 onsite{unit(rng) * options.onsite_scale, unit(rng) * options.onsite_scale,
                      unit(rng) * options.onsite_scale};
    const int nh = count(rng);
    std::vector<Hopping> hops;
    for (int n = 1; n <= nh; ++n) {
        auto c = [&] { return Complex(unit(rng), unit(rng)) * (0.5 * options.hopping_scale / n); };
        const Complex dx = c();
        const Complex dy = c();
        const Complex dz = c();
        hops.push_back({n, {dx, dy, dz}});
    }
    return ChainSpec(onsite, std::move(hops));
}

SeparableModel random_model(std::mt19937_64& rng, const RandomModelOptions& options) {
    ChainSpec a = random_chain(rng, options);
    ChainSpec b = random_chain(rng, options);
    return {std::move(a), std::move(b)};
}

} // namespace chernlink
