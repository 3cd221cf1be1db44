#include "chernlink/quench.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

#include "chernlink/errors.hpp"

namespace chernlink {

namespace {

using Spinor = std::array<Complex, 2>;

Vec3 bloch_of(const Spinor& s) {
    const Complex ab = std::conj(s[0]) * s[1];
    return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(s[0]) - std::norm(s[1])};
}

std::size_t step_count(double t_max, double dt) {
    if (!(dt > 0.0)) throw ContractViolation("time step must be positive");
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ContractViolation("duration must be finite and >= 0");
    return static_cast<std::size_t>(std::llround(t_max / dt));
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Least-squares residual of s_i ~ A cos(w t_i) + B sin(w t_i) + C on the
// uniform grid t_i = i * step.
double sinusoid_residual(std::span<const double> s, double step, double w) {
    double m[3][3] = {};
    double rhs[3] = {};
    double ss = 0.0;
    // cos/sin by rotation recurrence; drift over a few thousand samples is ~1e-13.
    const double cd = std::cos(w * step);
    const double sd = std::sin(w * step);
    double c = 1.0, sn = 0.0;
    for (double v : s) {
        const double b[3] = {c, sn, 1.0};
        for (int r = 0; r < 3; ++r) {
            for (int col = r; col < 3; ++col) m[r][col] += b[r] * b[col];
            rhs[r] += b[r] * v;
        }
        ss += v * v;
        const double next = c * cd - sn * sd;
        sn = sn * cd + c * sd;
        c = next;
    }
    for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < r; ++col) m[r][col] = m[col][r];
    }
    // Solve the 3x3 normal equations by Cramer's rule.
    auto det3 = [](const double a[3][3]) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double d = det3(m);
    if (std::abs(d) < 1e-300) return ss;
    double fit = 0.0;
    for (int col = 0; col < 3; ++col) {
        double mc[3][3];
        for (int r = 0; r < 3; ++r) {
            for (int k = 0; k < 3; ++k) mc[r][k] = (k == col) ? rhs[r] : m[r][k];
        }
        fit += det3(mc) / d * rhs[col];
    }
    // |s - Bx|^2 = |s|^2 - x . B^T s at the least-squares solution.
    return ss - fit;
}

struct MomentumQuench {
    Vec3 r;
    // Per requested time; empty optional means dropped.
    std::vector<std::optional<Vec3>> l;
};

MomentumQuench quench_analytic(const Vec3& r, std::span<const double> times, double eps_n) {
    MomentumQuench out{r, {}};
    const double mag = norm(r);
    const double omega = 2.0 * mag;
    const int rho = sign_of(dot(r, kInitialBloch));
    for (double T : times) {
        const Vec3 avg = average_bloch(r, T);
        const double len = norm(avg);
        if (rho == 0 || len < eps_n) {
            out.l.emplace_back();
        } else {
            out.l.emplace_back(avg * (rho * omega / (2.0 * len)));
        }
    }
    return out;
}

MomentumQuench quench_dynamics(const Vec3& r, double k, std::span<const double> times, double dt,
                               double eps_n) {
    MomentumQuench out{r, {}};
    const double t_max = times.empty() ? 0.0 : times.back();
    const auto traj = evolve_state_stepwise(r, t_max, dt, k);

    double omega = 0.0;
    int rho = 0;
    try {
        omega = estimate_frequency(traj);
        rho = precession_sign(traj, eps_n);
    } catch (const PhysicsError&) {
        out.l.assign(times.size(), std::nullopt);
        return out;
    }

    // Running trapezoid sum, read off at each requested time.
    Vec3 acc;
    std::size_t done = 0;
    for (double T : times) {
        const std::size_t steps = step_count(T, dt);
        for (; done < steps; ++done) acc += (traj.n[done] + traj.n[done + 1]) * 0.5;
        const Vec3 avg = steps == 0 ? traj.n[0] : acc / static_cast<double>(steps);
        const double len = norm(avg);
        if (len < eps_n) {
            out.l.emplace_back();
        } else {
            out.l.emplace_back(avg * (rho * omega / (2.0 * len)));
        }
    }
    return out;
}

} // namespace

Vec3 evolve_bloch(const Vec3& r, const Vec3& n0, double t) {
    const double mag = norm(r);
    if (mag == 0.0) return n0;
    return rotate_about_axis(n0, r / mag, 2.0 * mag * t);
}

BlochTrajectory evolve_state_stepwise(const Vec3& r, double t_max, double dt, double k) {
    const std::size_t steps = step_count(t_max, dt);
    BlochTrajectory traj{k, dt, r, {}};
    traj.n.reserve(steps + 1);

    // exp(-i r.sigma dt) = cos(|r|dt) - i sin(|r|dt) r-hat.sigma
    const double mag = norm(r);
    const double c = std::cos(mag * dt);
    const double s = mag > 0.0 ? std::sin(mag * dt) / mag : 0.0;
    const Complex i(0.0, 1.0);
    const Complex u00 = c - i * s * r.z;
    const Complex u01 = -i * s * Complex(r.x, -r.y);
    const Complex u10 = -i * s * Complex(r.x, r.y);
    const Complex u11 = c + i * s * r.z;

    Spinor psi{Complex(0.0), Complex(1.0)};
    traj.n.push_back(bloch_of(psi));
    for (std::size_t step = 0; step < steps; ++step) {
        psi = {u00 * psi[0] + u01 * psi[1], u10 * psi[0] + u11 * psi[1]};
        traj.n.push_back(bloch_of(psi));
    }
    return traj;
}

BlochTrajectory closed_form_trajectory(const Vec3& r, double t_max, double dt, const Vec3& n0, double k) {
    const std::size_t steps = step_count(t_max, dt);
    BlochTrajectory traj{k, dt, r, {}};
    traj.n.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) traj.n.push_back(evolve_bloch(r, n0, static_cast<double>(i) * dt));
    return traj;
}

Vec3 average_bloch(const Vec3& r, double T, const Vec3& n0) {
    if (!(T > 0.0)) throw ContractViolation("average_bloch: T must be positive");
    const double mag = norm(r);
    if (mag == 0.0) return n0;
    const Vec3 axis = r / mag;
    const Vec3 along = axis * dot(axis, n0);
    if (std::isinf(T)) return along;
    const Vec3 perp = n0 - along;
    const double wt = 2.0 * mag * T;
    return along + perp * (std::sin(wt) / wt) + cross(axis, perp) * ((1.0 - std::cos(wt)) / wt);
}

Vec3 average_bloch_trapezoid(const BlochTrajectory& traj, std::size_t steps) {
    if (traj.n.empty()) throw ContractViolation("average_bloch_trapezoid: empty trajectory");
    if (steps + 1 > traj.n.size()) throw ContractViolation("average_bloch_trapezoid: window exceeds trajectory");
    if (steps == 0) return traj.n[0];
    Vec3 acc = (traj.n[0] + traj.n[steps]) * 0.5;
    for (std::size_t i = 1; i < steps; ++i) acc += traj.n[i];
    return acc / static_cast<double>(steps);
}

Vec3 average_bloch_trapezoid(const BlochTrajectory& traj) {
    return average_bloch_trapezoid(traj, traj.n.empty() ? 0 : traj.n.size() - 1);
}

Vec3 steady_average(const Vec3& r) {
    const double mag = norm(r);
    if (mag == 0.0) throw ContractViolation("steady_average: direction of r = 0 is undefined");
    const Vec3 axis = r / mag;
    return -axis * axis.z;
}

double estimate_frequency(const BlochTrajectory& traj) {
    constexpr double kStationary = 1e-9;
    if (traj.n.size() < 4) throw NoPrecessionError("no precession: trajectory too short");
    const Vec3 centre = average_bloch_trapezoid(traj);
    const Vec3 w0 = traj.n[0] - centre;
    const double amp = norm(w0);
    if (amp < kStationary) throw NoPrecessionError("no precession: stationary Bloch vector");
    const Vec3 e = w0 / amp;

    std::vector<double> signal(traj.n.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < traj.n.size(); ++i) {
        signal[i] = dot(traj.n[i] - centre, e);
        peak = std::max(peak, std::abs(signal[i]));
    }
    if (peak < kStationary) throw NoPrecessionError("no precession: stationary Bloch vector");

    // Upward crossings are strictly periodic even if `centre` is slightly off.
    std::vector<double> ups;
    for (std::size_t i = 0; i + 1 < signal.size(); ++i) {
        if (signal[i] < 0.0 && signal[i + 1] >= 0.0) {
            const double frac = signal[i] / (signal[i] - signal[i + 1]);
            ups.push_back(traj.time(i) + frac * traj.dt);
        }
    }
    if (ups.size() < 3) throw NoPrecessionError("no precession: fewer than two full oscillations observed");
    const double period = (ups.back() - ups.front()) / static_cast<double>(ups.size() - 1);
    const double w_zero = kTwoPi / period;

    // Least-squares refinement on a decimated copy (>= 16 samples per period).
    const double span = traj.duration();
    const std::size_t per_period = static_cast<std::size_t>(period / traj.dt);
    std::size_t stride = std::max<std::size_t>(1, per_period / 16);
    stride = std::max(stride, traj.n.size() / 4096 + 1);
    std::vector<double> ss;
    for (std::size_t i = 0; i < signal.size(); i += stride) ss.push_back(signal[i]);
    const double step = traj.dt * static_cast<double>(stride);
    double lo = w_zero - std::numbers::pi / (2.0 * span);
    double hi = w_zero + std::numbers::pi / (2.0 * span);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - g * (hi - lo);
    double b = lo + g * (hi - lo);
    double fa = sinusoid_residual(ss, step, a);
    double fb = sinusoid_residual(ss, step, b);
    for (int it = 0; it < 40; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = sinusoid_residual(ss, step, a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = sinusoid_residual(ss, step, b);
        }
    }
    return 0.5 * (lo + hi);
}

int precession_sign(const BlochTrajectory& traj, double eps_n) {
    if (traj.n.size() < 3) throw DegenerateSignError("degenerate sign: trajectory too short");
    const Vec3 avg = average_bloch_trapezoid(traj);
    if (norm(avg) < eps_n) throw DegenerateSignError("degenerate sign: |n-bar| below threshold (critical momentum)");
    Vec3 swirl;
    for (std::size_t i = 1; i + 1 < traj.n.size(); ++i) {
        const Vec3 rate = (traj.n[i + 1] - traj.n[i - 1]) / (2.0 * traj.dt);
        swirl += cross(traj.n[i], rate);
    }
    swirl = swirl / static_cast<double>(traj.n.size() - 2);
    const double s = dot(avg, swirl);
    if (std::abs(s) < 1e-12) throw DegenerateSignError("degenerate sign: no rotation about n-bar");
    return sign_of(s);
}

std::string_view mode_name(QuenchMode mode) noexcept {
    return mode == QuenchMode::analytic ? "analytic" : "dynamics";
}

std::vector<DynamicLoop> dynamic_loops(const ChainSpec& chain, std::span<const double> times,
                                       const QuenchOptions& options) {
    if (options.samples < 16) throw ContractViolation("dynamic_loops: need at least 16 momenta");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw ContractViolation("dynamic_loops: times must be positive");
        if (i > 0 && !(times[i] > times[i - 1])) throw ContractViolation("dynamic_loops: times must increase");
        if (options.mode == QuenchMode::dynamics && std::isinf(times[i])) {
            throw ContractViolation("dynamic_loops: infinite time requires analytic mode");
        }
    }

    const auto n = static_cast<std::size_t>(options.samples);
    std::vector<DynamicLoop> loops(times.size());
    for (std::size_t t = 0; t < times.size(); ++t) loops[t].T = times[t];

    for (std::size_t i = 0; i < n; ++i) {
        const double k = loop_momentum(i, n);
        const Vec3 r = bloch_vector_1d(chain, k);
        if (norm(r) < 1e-9) throw GapClosingError(k, std::numeric_limits<double>::quiet_NaN(), norm(r));
        const auto q = options.mode == QuenchMode::analytic ? quench_analytic(r, times, options.eps_n)
                                                            : quench_dynamics(r, k, times, options.dt, options.eps_n);
        for (std::size_t t = 0; t < times.size(); ++t) {
            if (q.l[t]) {
                loops[t].k.push_back(k);
                loops[t].points.push_back(*q.l[t]);
            } else {
                loops[t].dropped_k.push_back(k);
            }
        }
    }
    for (auto& loop : loops) {
        const double frac = static_cast<double>(loop.dropped_k.size()) / static_cast<double>(n);
        loop.reliable = frac < options.max_drop_fraction && loop.points.size() >= 3;
    }
    return loops;
}

DynamicLoop dynamic_loop(const ChainSpec& chain, double T, const QuenchOptions& options) {
    const double times[] = {T};
    return dynamic_loops(chain, times, options).front();
}

double loop_deviation(const DynamicLoop& loop, const ChainSpec& chain) {
    double worst = 0.0;
    for (std::size_t i = 0; i < loop.points.size(); ++i) {
        worst = std::max(worst, distance(loop.points[i], bloch_vector_1d(chain, loop.k[i])));
    }
    return worst;
}

LinkingSeries dynamic_linking(const SeparableModel& model, std::span<const double> times,
                              const QuenchOptions& options) {
    const auto loops1 = dynamic_loops(model.chain1, times, options);
    const auto loops2 = dynamic_loops(model.chain2, times, options);

    LinkingSeries series;
    for (std::size_t t = 0; t < times.size(); ++t) {
        series.T.push_back(times[t]);
        double value = std::numeric_limits<double>::quiet_NaN();
        bool ok = loops1[t].reliable && loops2[t].reliable;
        if (ok) {
            try {
                value = gauss_linking(loops1[t].loop(), loops2[t].loop(), LinkingOptions{options.touch_tolerance});
            } catch (const NearCriticalLoopsError&) {
                ok = false;
            }
        }
        series.L.push_back(value);
        series.reliable.push_back(ok);
    }
    series.converged_value = converged_integer(series.L);
    return series;
}

std::vector<double> log_time_grid(double t_min, double t_max, int points, double dt) {
    if (!(t_min > 0.0) || !(t_max >= t_min) || points < 1 || !(dt > 0.0)) {
        throw ContractViolation("log_time_grid: need 0 < t_min <= t_max, points >= 1, dt > 0");
    }
    std::vector<double> out;
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 1.0 : static_cast<double>(i) / (points - 1);
        const double t = t_min * std::pow(t_max / t_min, f);
        const double snapped = std::max(1.0, std::round(t / dt)) * dt;
        if (out.empty() || snapped > out.back()) out.push_back(snapped);
    }
    return out;
}

std::optional<double> converged_integer(std::span<const double> values) {
    if (values.empty()) return std::nullopt;
    const std::size_t tail = (values.size() + 3) / 4;
    const auto window = values.subspan(values.size() - tail);
    if (!std::isfinite(window.back())) return std::nullopt;
    const double target = std::round(window.back());
    for (double v : window) {
        if (!std::isfinite(v) || std::abs(v - target) > 0.25) return std::nullopt;
    }
    return target;
}

} // namespace chernlink
