#ifndef LSHARM_GMRES_HPP
#define LSHARM_GMRES_HPP

#include <utility>
#include <vector>

#include "lsharm/ls_operator.hpp"

namespace lsharm {

struct SolveOptions {
  double tol = 1e-10;  // relative residual in the discrete l2 coefficient norm
  int max_iter = 500;
  int restart = 50;
};

enum class SolveStatus { Converged, MaxIterations, Breakdown };

struct SolveReport {
  SolveStatus status = SolveStatus::Converged;
  int iterations = 0;
  std::vector<double> residual_history;  // relative, one entry per iteration
  double achieved_tol = 0.0;
  double seconds_per_iteration = 0.0;
  double setup_seconds = 0.0;
};

/// Restarted GMRES on u - i K[u] = rhs, zero initial guess, unweighted l2
/// inner product over the packed coefficient vector. On MaxIterations or
/// Breakdown the best iterate is returned with the corresponding flag.
std::pair<ModeField, SolveReport> solve(const ForwardOperator& op,
                                        const ModeField& rhs,
                                        const SolveOptions& options = {});

}  // namespace lsharm

#endif
