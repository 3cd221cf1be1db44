#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chernlink/invariants.hpp"
#include "chernlink/model.hpp"
#include "chernlink/quench.hpp"

namespace chernlink {

struct SweepSpec {
    double mu_min = -6.0;
    double mu_max = 6.0;
    double mu_step = 0.25;
    /// Values of mu closer than this to a critical value are skipped; 0 disables.
    double exclusion = 0.1;
    /// Critical mu values; empty means the QWZ boundaries +-rho_x +- rho_y.
    std::vector<double> critical;
    /// Compute the dynamic linking column (at quench.t_max).
    bool dynamic = true;
};

struct VerifySpec {
    int cells = 10;
    /// Extra seeded random models checked alongside the configured one.
    int random_models = 0;
    /// Self-test: perturb one bond of the lattice by 0.1 before checking.
    bool corrupt = false;
};

/// Everything a CLI run needs. Produced by parse_config; every field has a
/// default so an empty file is a valid configuration.
struct RunConfig {
    QwzParams qwz;
    /// Set when any `onsite.*` or `hop.*` key appears; chains then come from
    /// those keys instead of the QWZ preset.
    bool generic = false;
    Vec3 onsite_x;
    Vec3 onsite_y;
    std::vector<Hopping> hops_x;
    std::vector<Hopping> hops_y;
    int max_range = kDefaultMaxRange;

    InvariantOptions invariants;

    QuenchOptions quench;
    double t_min = 1.0;
    double t_max = 200.0;
    int t_points = 64;
    std::vector<double> snapshots;

    SweepSpec sweep;
    VerifySpec verify;

    std::uint64_t seed = 20240601;

    /// Model described by the configuration.
    SeparableModel model() const;
    /// Same model with chain1's on-site z component replaced by mu (QWZ:
    /// mu1 = mu). This is the parameter the sweep varies.
    SeparableModel model_at(double mu) const;
    std::vector<double> time_grid() const;
    std::vector<double> critical_mu() const;
};

RunConfig parse_config_text(std::string_view text);
/// Throws ConfigError on missing file, malformed lines (with line number),
/// unknown keys and out-of-range values.
RunConfig parse_config(const std::filesystem::path& path);

/// Keys accepted by the parser, for documentation and error messages.
std::vector<std::string> known_config_keys();

} // namespace chernlink
