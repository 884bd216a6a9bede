#pragma once

#include <iosfwd>

#include "visharp/operators.hpp"

namespace visharp {

enum class ScheduleKind { Harmonic, Geometric, AdaptiveLeastNorm };

/// Step-size multipliers theta_k. Harmonic satisfies the diminishing /
/// divergent-sum conditions the convergence theorem needs; the other two
/// are experimental (no convergence guarantee).
struct StepSchedule {
  ScheduleKind kind = ScheduleKind::Harmonic;
  double theta0 = 0.5;
  double power = 1.0;   // Harmonic: theta0 / (k+1)^power, power in (0.5, 1]
  double ratio = 0.9;   // Geometric: theta0 * ratio^k
  double shrink = 0.5;  // AdaptiveLeastNorm: theta0 * shrink^(stalled windows)
  int window = 1000;

  bool experimental() const { return kind != ScheduleKind::Harmonic; }
  void validate() const;
};

const char* schedule_name(ScheduleKind k);

/// theta_k; `stalled_windows` only matters for AdaptiveLeastNorm.
double theta(const StepSchedule& s, long k, int stalled_windows = 0);

struct SolverConfig {
  double epsilon = 0.05;
  std::optional<double> lambda;           // nullopt = auto (2 * Lambda_eps)
  double rho_f = 1.0;
  std::optional<double> restart_radius;   // default 2 * rho_f
  StepSchedule schedule;
  long max_iters = 100000;
  Vector x0;
  long trace_every = 1;
  std::uint64_t seed = 0;
  std::optional<double> stop_residual;    // opt-in early exit

  double effective_restart_radius() const {
    return restart_radius.value_or(2.0 * rho_f);
  }
  /// Throws ConfigInvalid on violated invariants (||x0|| <= rho_f,
  /// restart_radius >= rho_f, schedule ranges, X inside rho_f * B).
  void validate(const Problem& problem) const;
};

struct TraceRecord {
  long k = 0;
  Vector x;
  double step = 0.0;
  double f_norm = 0.0;
  PenaltyZone zone = PenaltyZone::Inside;
  double residual = 0.0;                  // ||x - proj(X, x - F(x))||
  std::optional<double> merit;            // ||x - x*||^2 when x* known
  bool restarted = false;
};

struct SolveResult {
  Vector best;
  long best_iter = 0;
  long restarts = 0;
  long iters_run = 0;
  std::vector<TraceRecord> trace;
  double certified_eps = 0.0;  // ||best - x*|| when known, else best residual
  double best_residual = 0.0;

  // resolved parameters, for reporting
  double lambda = 0.0;
  double lambda_eps = 0.0;  // Lambda_eps = rho_f * M / eps
  double m_hat = 0.0;
  SolverConfig config;
  std::optional<Vector> known_solution;
};

/// One update of the iteration: x - theta * F_lambda(x) while the iterate
/// stays inside the restart radius, otherwise the restart branch back to x0.
std::pair<Vector, bool> step(const Vector& x, const PenalizedOperator& op,
                             double theta, const SolverConfig& cfg);

/// The full diminishing-step sharp-penalty iteration. Runs max_iters steps
/// (no other termination unless stop_residual is set); never throws on
/// non-convergence, the result reports what was achieved.
SolveResult solve(const Problem& problem, const SolverConfig& cfg,
                  const PenaltyMethod& method);

struct ConvergenceReport {
  bool a1_pass = false;
  double max_norm = 0.0;
  double a1_bound = 0.0;
  bool a2_applicable = false;
  bool a2_pass = false;
  long restarts = 0;
  std::optional<long> last_restart_iter;
};

/// Post-hoc checks of the boundedness condition and the merit-descent
/// condition on the recorded trace.
ConvergenceReport check_a1_a2(const SolveResult& result);

/// CSV schema: k,step,f_norm,zone,residual,merit,restarted,x_0..x_{n-1}
void write_trace_csv(std::ostream& out, const SolveResult& result);
void write_trace_csv(const std::string& path, const SolveResult& result);

}  // namespace visharp
