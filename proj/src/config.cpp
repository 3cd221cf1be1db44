#include "chernlink/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "chernlink/errors.hpp"

namespace chernlink {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class LineError {
public:
    LineError(int line, std::string key) : line_(line), key_(std::move(key)) {}
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("config line " + std::to_string(line_) + ": " + key_ + ": " + what);
    }

private:
    int line_;
    std::string key_;
};

double to_double(std::string_view s, const LineError& err) {
    s = trim(s);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
        err.fail("expected a finite number, got '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> to_list(std::string_view s, const LineError& err) {
    std::vector<double> out;
    if (trim(s).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(to_double(s.substr(start, comma - start), err));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

long to_int(std::string_view s, const LineError& err) {
    const double v = to_double(s, err);
    if (v != std::floor(v) || std::abs(v) > 9e15) err.fail("expected an integer");
    return static_cast<long>(v);
}

bool to_bool(std::string_view s, const LineError& err) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    err.fail("expected true or false");
}

void positive(double v, const LineError& err) {
    if (!(v > 0.0)) err.fail("must be > 0");
}

using Setter = std::function<void(RunConfig&, std::string_view, const LineError&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        auto real = [&t](const char* key, auto member, bool must_be_positive = false) {
            t[key] = [member, must_be_positive](RunConfig& c, std::string_view v, const LineError& e) {
                const double x = to_double(v, e);
                if (must_be_positive) positive(x, e);
                member(c) = x;
            };
        };
        auto grid = [&t](const char* key, auto member, int min_value) {
            t[key] = [member, min_value](RunConfig& c, std::string_view v, const LineError& e) {
                const long x = to_int(v, e);
                if (x < min_value) e.fail("must be >= " + std::to_string(min_value));
                member(c) = static_cast<int>(x);
            };
        };

        real("model.lambda_x", [](RunConfig& c) -> double& { return c.qwz.lambda_x; });
        real("model.lambda_y", [](RunConfig& c) -> double& { return c.qwz.lambda_y; });
        real("model.rho_x", [](RunConfig& c) -> double& { return c.qwz.rho_x; });
        real("model.rho_y", [](RunConfig& c) -> double& { return c.qwz.rho_y; });
        real("model.mu1", [](RunConfig& c) -> double& { return c.qwz.mu1; });
        real("model.mu2", [](RunConfig& c) -> double& { return c.qwz.mu2; });
        grid("model.max_range", [](RunConfig& c) -> int& { return c.max_range; }, 1);

        grid("grid.quadrature", [](RunConfig& c) -> int& { return c.invariants.quadrature_grid; }, 16);
        grid("grid.lattice", [](RunConfig& c) -> int& { return c.invariants.lattice_grid; }, 16);
        grid("grid.loop", [](RunConfig& c) -> int& { return c.invariants.loop_samples; }, 16);

        grid("quench.n", [](RunConfig& c) -> int& { return c.quench.samples; }, 16);
        real("quench.dt", [](RunConfig& c) -> double& { return c.quench.dt; }, true);
        real("quench.t_min", [](RunConfig& c) -> double& { return c.t_min; }, true);
        real("quench.t_max", [](RunConfig& c) -> double& { return c.t_max; }, true);
        grid("quench.t_points", [](RunConfig& c) -> int& { return c.t_points; }, 1);
        real("quench.max_drop_fraction", [](RunConfig& c) -> double& { return c.quench.max_drop_fraction; }, true);
        t["quench.mode"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            v = trim(v);
            if (v == "dynamics") {
                c.quench.mode = QuenchMode::dynamics;
            } else if (v == "analytic") {
                c.quench.mode = QuenchMode::analytic;
            } else {
                e.fail("expected 'dynamics' or 'analytic'");
            }
        };
        t["quench.snapshots"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            c.snapshots = to_list(v, e);
            for (double s : c.snapshots) positive(s, e);
        };

        real("sweep.mu_min", [](RunConfig& c) -> double& { return c.sweep.mu_min; });
        real("sweep.mu_max", [](RunConfig& c) -> double& { return c.sweep.mu_max; });
        real("sweep.mu_step", [](RunConfig& c) -> double& { return c.sweep.mu_step; }, true);
        t["sweep.exclusion"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            const double x = to_double(v, e);
            if (x < 0.0) e.fail("must be >= 0");
            c.sweep.exclusion = x;
        };
        t["sweep.critical"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            c.sweep.critical = to_list(v, e);
        };
        t["sweep.dynamic"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            c.sweep.dynamic = to_bool(v, e);
        };

        real("tol.eps_touch", [](RunConfig& c) -> double& { return c.invariants.touch_tolerance; }, true);
        real("tol.eps_n", [](RunConfig& c) -> double& { return c.quench.eps_n; }, true);
        real("tol.gap_min", [](RunConfig& c) -> double& { return c.invariants.gap_min; }, true);
        real("tol.flux_limit", [](RunConfig& c) -> double& { return c.invariants.flux_limit; }, true);

        grid("verify.n", [](RunConfig& c) -> int& { return c.verify.cells; }, 3);
        grid("verify.random", [](RunConfig& c) -> int& { return c.verify.random_models; }, 0);
        t["verify.corrupt"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            c.verify.corrupt = to_bool(v, e);
        };

        t["run.seed"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            const long x = to_int(v, e);
            if (x < 0) e.fail("must be >= 0");
            c.seed = static_cast<std::uint64_t>(x);
        };
        t["onsite.x"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            const auto xs = to_list(v, e);
            if (xs.size() != 3) e.fail("expected x,y,z");
            c.onsite_x = {xs[0], xs[1], xs[2]};
            c.generic = true;
        };
        t["onsite.y"] = [](RunConfig& c, std::string_view v, const LineError& e) {
            const auto xs = to_list(v, e);
            if (xs.size() != 3) e.fail("expected x,y,z");
            c.onsite_y = {xs[0], xs[1], xs[2]};
            c.generic = true;
        };
        return t;
    }();
    return table;
}

// hop.x.<n> / hop.y.<n> = re1,im1,re2,im2,re3,im3
bool parse_hop(RunConfig& c, std::string_view key, std::string_view value, const LineError& err) {
    if (key.substr(0, 4) != "hop." || key.size() < 7 || key[5] != '.') return false;
    const char axis = key[4];
    if (axis != 'x' && axis != 'y') return false;
    const long range = to_int(key.substr(6), err);
    const auto xs = to_list(value, err);
    if (xs.size() != 6) err.fail("expected re1,im1,re2,im2,re3,im3");
    Hopping h{static_cast<int>(range), {{xs[0], xs[1]}, {xs[2], xs[3]}, {xs[4], xs[5]}}};
    auto& hops = axis == 'x' ? c.hops_x : c.hops_y;
    for (const auto& existing : hops) {
        if (existing.range == h.range) err.fail("duplicate hopping range");
    }
    if (range < 1) err.fail("hopping range must be >= 1");
    hops.push_back(h);
    c.generic = true;
    return true;
}

} // namespace

SeparableModel RunConfig::model() const {
    if (!generic) return qwz_model(qwz);
    try {
        return {ChainSpec(onsite_x, hops_x, max_range), ChainSpec(onsite_y, hops_y, max_range)};
    } catch (const ContractViolation& e) {
        throw ConfigError(std::string("invalid model: ") + e.what());
    }
}

SeparableModel RunConfig::model_at(double mu) const {
    SeparableModel m = model();
    Vec3 onsite = m.chain1.onsite();
    onsite.z = mu;
    m.chain1 = m.chain1.with_onsite(onsite);
    return m;
}

std::vector<double> RunConfig::time_grid() const {
    return log_time_grid(t_min, t_max, t_points, quench.dt);
}

std::vector<double> RunConfig::critical_mu() const {
    if (!sweep.critical.empty()) return sweep.critical;
    if (generic) return {};
    // model_at shifts mu1 only, so boundaries are offset by mu2.
    auto crit = qwz_critical_mu(qwz);
    for (double& c : crit) c += qwz.mu2;
    return crit;
}

RunConfig parse_config_text(std::string_view text) {
    RunConfig cfg;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'section.key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const LineError err(line_no, std::string(key));
        if (key.find('.') == std::string_view::npos) err.fail("key must have the form section.key");

        if (const auto it = setters().find(key); it != setters().end()) {
            it->second(cfg, value, err);
        } else if (!parse_hop(cfg, key, value, err)) {
            err.fail("unknown key");
        }
    }

    if (cfg.t_min > cfg.t_max) throw ConfigError("config: quench.t_min must not exceed quench.t_max");
    if (cfg.sweep.mu_min > cfg.sweep.mu_max) throw ConfigError("config: sweep.mu_min must not exceed sweep.mu_max");
    for (const auto& h : cfg.hops_x) {
        if (h.range > cfg.max_range) throw ConfigError("config: hop.x." + std::to_string(h.range) + " exceeds model.max_range");
    }
    for (const auto& h : cfg.hops_y) {
        if (h.range > cfg.max_range) throw ConfigError("config: hop.y." + std::to_string(h.range) + " exceeds model.max_range");
    }
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::vector<std::string> known_config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    keys.push_back("hop.x.<n>");
    keys.push_back("hop.y.<n>");
    return keys;
}

} // namespace chernlink
