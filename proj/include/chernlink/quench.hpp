#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chernlink/model.hpp"

namespace chernlink {

/// Every momentum starts in the sigma_z = -1 eigenstate, spinor (0, 1).
inline constexpr Vec3 kInitialBloch{0.0, 0.0, -1.0};

/// Exact precession under h = r.sigma: dn/dt = 2 r x n, i.e. rotation of
/// n0 by 2|r|t about +r-hat. Returns n0 unchanged when r = 0.
Vec3 evolve_bloch(const Vec3& r, const Vec3& n0, double t);

/// Bloch-vector samples n(i*dt), i = 0..steps.
struct BlochTrajectory {
    double k = 0.0;
    double dt = 0.0;
    Vec3 r;
    std::vector<Vec3> n;

    double time(std::size_t i) const noexcept { return static_cast<double>(i) * dt; }
    double duration() const noexcept { return n.empty() ? 0.0 : time(n.size() - 1); }
};

/// Evolves the spinor (0, 1) with the exact one-step propagator
/// exp(-i r.sigma dt) applied repeatedly, recording n = <psi|sigma|psi>.
BlochTrajectory evolve_state_stepwise(const Vec3& r, double t_max, double dt, double k = 0.0);

/// Samples evolve_bloch on the same time grid as evolve_state_stepwise.
BlochTrajectory closed_form_trajectory(const Vec3& r, double t_max, double dt, const Vec3& n0 = kInitialBloch,
                                       double k = 0.0);

/// Exact time average (1/T) int_0^T n(t) dt. T = +inf gives steady_average.
/// Returns n0 when r = 0.
Vec3 average_bloch(const Vec3& r, double T, const Vec3& n0 = kInitialBloch);

/// Trapezoid average of the first `steps` intervals of a trajectory.
Vec3 average_bloch_trapezoid(const BlochTrajectory& traj, std::size_t steps);
Vec3 average_bloch_trapezoid(const BlochTrajectory& traj);

/// T -> inf limit for the initial state -z: -r-hat (r-hat . z-hat).
/// Throws ContractViolation when r = 0.
Vec3 steady_average(const Vec3& r);

/// Precession frequency from upward zero crossings of the transverse
/// oscillation, refined by a least-squares sinusoid fit. Throws
/// NoPrecessionError for stationary trajectories or too few oscillations.
double estimate_frequency(const BlochTrajectory& traj);

/// sgn(n-bar . <n x dn/dt>) over the trajectory. Throws DegenerateSignError
/// when |n-bar| < eps_n or no rotation is present.
int precession_sign(const BlochTrajectory& traj, double eps_n = 1e-3);

enum class QuenchMode {
    /// Frequency, sign and time average are all measured from simulated trajectories.
    dynamics,
    /// Closed-form average, omega = 2|r|, rho = sgn(r-hat . n0).
    analytic,
};

std::string_view mode_name(QuenchMode mode) noexcept;

struct QuenchOptions {
    int samples = 50;
    double dt = 0.01;
    double eps_n = 1e-3;
    double max_drop_fraction = 0.1;
    double touch_tolerance = 1e-6;
    QuenchMode mode = QuenchMode::dynamics;
};

/// l(k, T) = rho * omega * n-bar(k, T) / (2 |n-bar(k, T)|) on the half-step grid.
struct DynamicLoop {
    double T = 0.0;
    std::vector<double> k;
    std::vector<Vec3> points;
    std::vector<double> dropped_k;
    bool reliable = true;

    LoopSamples loop() const { return LoopSamples(points); }
};

/// Dynamic loops of one chain at each time in `times` (increasing). In
/// dynamics mode each momentum is simulated once up to max(times).
std::vector<DynamicLoop> dynamic_loops(const ChainSpec& chain, std::span<const double> times,
                                       const QuenchOptions& options = {});
DynamicLoop dynamic_loop(const ChainSpec& chain, double T, const QuenchOptions& options = {});

/// max over kept momenta of |l(k, T) - r(k)|.
double loop_deviation(const DynamicLoop& loop, const ChainSpec& chain);

struct LinkingSeries {
    std::vector<double> T;
    /// NaN where the entry is unreliable.
    std::vector<double> L;
    std::vector<bool> reliable;
    std::optional<double> converged_value;
};

/// Linking number of the two dynamic loops at each T.
LinkingSeries dynamic_linking(const SeparableModel& model, std::span<const double> times,
                              const QuenchOptions& options = {});

/// `points` log-spaced times in [t_min, t_max], snapped to multiples of dt
/// and deduplicated.
std::vector<double> log_time_grid(double t_min, double t_max, int points, double dt);

/// Integer the final 25% of `values` share to within 0.25, if any.
std::optional<double> converged_integer(std::span<const double> values);

} // namespace chernlink
