#ifndef LSHARM_RUNNER_HPP
#define LSHARM_RUNNER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lsharm/config.hpp"
#include "lsharm/gmres.hpp"
#include "lsharm/moments.hpp"

namespace lsharm {

/// Everything one solve produces, before any files are written.
struct RunOutcome {
  RunConfig config;
  ModeField solution;
  RadialGrid grid;
  SolveReport report;
  double relative_error = -1.0;  // < 0 when no reference was available
  double moment_seconds = 0.0;
  double incident_tail = 0.0;
};

/// Builds grid/contrast/incident/moments for the config and solves.
/// moment_override lets sweeps inject a shared or cached table.
RunOutcome execute(const RunConfig& cfg,
                   const MomentTable* moment_override = nullptr);

/// Rebuilds a field's radial profile on another grid of the same extent by
/// per-interval Chebyshev evaluation (used to compare runs across radial
/// resolutions).
ModeField resample_radial(const ModeField& f, const RadialGrid& from,
                          const RadialGrid& to);

struct SweepRow {
  int value = 0;
  double time_per_iteration = 0.0;
  int iterations = 0;
  double relative_error = 0.0;
  double error_ratio = 0.0;  // previous / current; 0 on the first row
  double log2_error_ratio = 0.0;
};

/// Convergence study mirroring the benchmark-table schema. The reference is
/// the exact solution where one exists, otherwise a refined self-solve.
std::vector<SweepRow> sweep_rows(const RunConfig& cfg, std::ostream& log);

// CLI entry points; return process exit codes (0 success, 1 runtime error).
int run_single(const RunConfig& cfg, std::ostream& log);
int run_sweep(const RunConfig& cfg, std::ostream& log);
int cache_moments(const RunConfig& cfg, std::ostream& log);
int selftest(std::ostream& log);

}  // namespace lsharm

#endif
