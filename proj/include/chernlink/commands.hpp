#pragma once

#include <string>
#include <vector>

#include "chernlink/config.hpp"
#include "chernlink/output.hpp"

namespace chernlink {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPhysics = 1;
inline constexpr int kExitConfig = 2;

struct CommandResult {
    std::vector<Table> tables;
    /// Human-readable lines for stderr.
    std::vector<std::string> notes;
    int exit_code = kExitOk;
};

/// One-row table: chern_quadrature, chern_lattice, linking_static, grid_used, gap.
/// Physics errors (gap closing, touching loops) propagate as exceptions.
CommandResult cmd_invariants(const RunConfig& cfg);

/// `quench` table (T, L_l, flag) plus a `snapshots` table when
/// cfg.snapshots is non-empty. Exit code 1 if any entry is unreliable.
CommandResult cmd_quench(const RunConfig& cfg);

/// Phase-diagram table; row-level failures go to the status column.
CommandResult cmd_sweep(const RunConfig& cfg);

/// Separability and spectrum checks; exit code 1 if any check fails.
CommandResult cmd_verify(const RunConfig& cfg);

/// Static loop samples (alpha, k, x, y, z) with grid.loop points per chain.
CommandResult cmd_loops(const RunConfig& cfg);

/// Mu values visited by the sweep, after exclusion.
std::vector<double> sweep_points(const RunConfig& cfg);

} // namespace chernlink
