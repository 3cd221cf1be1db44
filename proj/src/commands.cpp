#include "chernlink/commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <limits>
#include <random>

#include "chernlink/errors.hpp"
#include "chernlink/invariants.hpp"
#include "chernlink/lattice.hpp"
#include "chernlink/quench.hpp"

namespace chernlink {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Table loop_table(std::string name, bool with_time) {
    Table t;
    t.name = std::move(name);
    if (with_time) t.header.push_back("T");
    for (const char* h : {"alpha", "k", "x", "y", "z"}) t.header.emplace_back(h);
    return t;
}

void add_loop_row(Table& t, std::optional<double> T, int alpha, double k, const Vec3& p) {
    std::vector<Cell> row;
    if (T) row.emplace_back(*T);
    row.emplace_back(static_cast<long long>(alpha));
    row.emplace_back(k);
    row.emplace_back(p.x);
    row.emplace_back(p.y);
    row.emplace_back(p.z);
    t.add_row(std::move(row));
}

bool rounds_to(double v, int target) { return std::isfinite(v) && std::lround(v) == target; }

} // namespace

CommandResult cmd_invariants(const RunConfig& cfg) {
    const auto rep = compute_invariants(cfg.model(), cfg.invariants);
    Table t;
    t.name = "invariants";
    t.header = {"chern_quadrature", "chern_lattice", "linking_static", "grid_used", "gap"};
    t.add_row({rep.chern_quadrature, static_cast<long long>(rep.chern_lattice), rep.linking_static,
               static_cast<long long>(rep.grid_used), rep.gap});
    CommandResult res;
    res.tables.push_back(std::move(t));
    res.notes.push_back("chern (lattice) = " + std::to_string(rep.chern_lattice) +
                        ", quadrature = " + format_real(rep.chern_quadrature) +
                        ", static linking = " + format_real(rep.linking_static));
    if (rep.gap > cfg.invariants.gap_min && !rep.consistent()) {
        res.notes.push_back("warning: invariant routes disagree by more than 0.1");
        res.exit_code = kExitPhysics;
    }
    return res;
}

CommandResult cmd_quench(const RunConfig& cfg) {
    const auto model = cfg.model();
    const auto times = cfg.time_grid();
    const auto series = dynamic_linking(model, times, cfg.quench);

    CommandResult res;
    Table t;
    t.name = "quench";
    t.header = {"T", "L_l", "flag"};
    bool all_ok = true;
    for (std::size_t i = 0; i < series.T.size(); ++i) {
        t.add_row({series.T[i], series.L[i], std::string(series.reliable[i] ? "ok" : "unreliable")});
        all_ok = all_ok && series.reliable[i];
    }
    res.tables.push_back(std::move(t));

    if (!cfg.snapshots.empty()) {
        std::vector<double> snaps;
        for (double s : cfg.snapshots) snaps.push_back(std::max(1.0, std::round(s / cfg.quench.dt)) * cfg.quench.dt);
        std::sort(snaps.begin(), snaps.end());
        snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
        const auto l1 = dynamic_loops(model.chain1, snaps, cfg.quench);
        const auto l2 = dynamic_loops(model.chain2, snaps, cfg.quench);
        Table s = loop_table("snapshots", true);
        for (std::size_t i = 0; i < snaps.size(); ++i) {
            for (std::size_t j = 0; j < l1[i].points.size(); ++j) add_loop_row(s, snaps[i], 1, l1[i].k[j], l1[i].points[j]);
            for (std::size_t j = 0; j < l2[i].points.size(); ++j) add_loop_row(s, snaps[i], 2, l2[i].k[j], l2[i].points[j]);
        }
        res.tables.push_back(std::move(s));
    }

    if (series.converged_value) {
        res.notes.push_back("converged linking number: " + format_real(*series.converged_value));
    } else {
        res.notes.push_back("linking series did not settle on an integer");
    }
    if (!all_ok) {
        res.notes.push_back("some entries are unreliable (too many critical momenta or touching loops)");
        res.exit_code = kExitPhysics;
    }
    return res;
}

std::vector<double> sweep_points(const RunConfig& cfg) {
    const auto crit = cfg.critical_mu();
    const auto& s = cfg.sweep;
    const long count = std::lround(std::floor((s.mu_max - s.mu_min) / s.mu_step + 1e-9));
    std::vector<double> out;
    for (long i = 0; i <= count; ++i) {
        const double mu = s.mu_min + static_cast<double>(i) * s.mu_step;
        bool skip = false;
        for (double c : crit) skip = skip || std::abs(mu - c) < s.exclusion;
        if (!skip) out.push_back(mu);
    }
    return out;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
    Table t;
    t.name = "sweep";
    t.header = {"mu", "chern_lattice", "chern_quadrature", "linking_static", "linking_dynamic_Tmax", "gap", "status"};
    CommandResult res;
    int flagged = 0;
    const double t_max = std::max(1.0, std::round(cfg.t_max / cfg.quench.dt)) * cfg.quench.dt;

    for (double mu : sweep_points(cfg)) {
        const auto model = cfg.model_at(mu);
        const double gap = spectral_gap(model, cfg.invariants.lattice_grid);
        std::string status = "ok";
        Cell lattice = kNaN;
        double quad = kNaN, link = kNaN, dyn = kNaN;
        try {
            const auto rep = compute_invariants(model, cfg.invariants);
            lattice = static_cast<long long>(rep.chern_lattice);
            quad = rep.chern_quadrature;
            link = rep.linking_static;
            if (cfg.sweep.dynamic) {
                const double times[] = {t_max};
                const auto series = dynamic_linking(model, times, cfg.quench);
                if (series.reliable[0]) {
                    dyn = series.L[0];
                } else {
                    status = "unreliable";
                }
            }
            if (status == "ok" && gap > cfg.invariants.gap_min) {
                const bool agree = rounds_to(quad, rep.chern_lattice) && rounds_to(link, rep.chern_lattice) &&
                                   (!cfg.sweep.dynamic || rounds_to(dyn, rep.chern_lattice));
                if (!agree) status = "inconsistent";
            }
        } catch (const PhysicsError& e) {
            status = e.status();
        }
        if (status != "ok") ++flagged;
        t.add_row({mu, lattice, quad, link, dyn, gap, status});
    }
    res.tables.push_back(std::move(t));
    res.notes.push_back(std::to_string(res.tables.front().rows.size()) + " sweep rows, " + std::to_string(flagged) +
                        " flagged");
    return res;
}

CommandResult cmd_verify(const RunConfig& cfg) {
    constexpr double kIdentityBound = 1e-12;
    constexpr double kSpectrumBound = 1e-10;
    constexpr int kMaxDenseCells = 16;

    CommandResult res;
    Table t;
    t.name = "verify";
    t.header = {"check", "value", "bound", "pass"};
    bool all_pass = true;
    auto record = [&](const std::string& check, double value, double bound, bool must_exceed = false) {
        const bool pass = must_exceed ? value >= bound : value <= bound;
        all_pass = all_pass && pass;
        t.add_row({check, value, bound, std::string(pass ? "true" : "false")});
    };

    const int n = cfg.verify.cells;
    auto check_model = [&](const std::string& prefix, const SeparableModel& m) {
        auto lattice = build_real_space(m, n);
        if (cfg.verify.corrupt) {
            // One x bond of cell (0,0) perturbed by 0.1, kept Hermitian.
            const std::size_t a = site_index(0, 0, 0, n);
            const std::size_t b = site_index(1 % n, 0, 0, n);
            lattice.set(a, b, lattice.at(a, b) + 0.1);
            lattice.set(b, a, lattice.at(b, a) + 0.1);
        }
        record(prefix + "hermiticity_2d", lattice.hermiticity_residual(), kIdentityBound);
        record(prefix + "separability", separability_deviation(lattice, m, n), kIdentityBound);
        const auto [h1, h2] = extract_chains(m, n);
        record(prefix + "chain1_decomposition", chain_decomposition_deviation(h1, m.chain1, n), kIdentityBound);
        record(prefix + "chain2_decomposition", chain_decomposition_deviation(h2, m.chain2, n), kIdentityBound);
        record(prefix + "chain1_spectrum", spectrum_deviation(h1.eigenvalues(), bloch_spectrum_1d(m.chain1, n)),
               kSpectrumBound);
        record(prefix + "chain2_spectrum", spectrum_deviation(h2.eigenvalues(), bloch_spectrum_1d(m.chain2, n)),
               kSpectrumBound);
        if (n <= kMaxDenseCells && !cfg.verify.corrupt) {
            record(prefix + "spectrum_2d", spectrum_deviation(lattice.eigenvalues(), bloch_spectrum_2d(m, n)),
                   kSpectrumBound);
        }
    };

    check_model("", cfg.model());
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.verify.random_models; ++i) {
        check_model("random" + std::to_string(i) + ".", random_model(rng));
    }
    res.tables.push_back(std::move(t));
    res.notes.push_back(all_pass ? "all separability checks passed" : "separability check FAILED");
    if (!all_pass) res.exit_code = kExitPhysics;
    return res;
}

CommandResult cmd_loops(const RunConfig& cfg) {
    const auto model = cfg.model();
    const auto n = static_cast<std::size_t>(cfg.invariants.loop_samples);
    Table t = loop_table("loops", false);
    int alpha = 1;
    for (const auto* chain : {&model.chain1, &model.chain2}) {
        for (std::size_t i = 0; i < n; ++i) {
            const double k = loop_momentum(i, n);
            add_loop_row(t, std::nullopt, alpha, k, bloch_vector_1d(*chain, k));
        }
        ++alpha;
    }
    CommandResult res;
    res.tables.push_back(std::move(t));
    return res;
}

} // namespace chernlink
