#include "visharp/solver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace visharp {

namespace {

// Upper estimate of ||X|| = sup_{x in X} ||x||; closed form where the
// variant allows, sampled otherwise.
std::optional<double> set_norm_bound(const ConvexSet& set) {
  if (const auto* b = std::get_if<Ball>(&set.variant()))
    return b->center.norm() + b->radius;
  if (const auto* bx = std::get_if<Box>(&set.variant())) {
    double s = 0.0;
    for (long i = 0; i < set.dim(); ++i) {
      double m = std::max(std::abs(bx->lower[i]), std::abs(bx->upper[i]));
      s += m * m;
    }
    return std::sqrt(s) + set.pad();
  }
  if (std::holds_alternative<LevelSet>(set.variant()) && !interior_point(set))
    return std::nullopt;  // nothing cheap to sample from
  SetSampler sampler(set, 1234);
  double m = 0.0;
  for (int i = 0; i < 2000; ++i) m = std::max(m, sampler.sample().norm());
  return m;
}

void fmt_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

const char* schedule_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Harmonic: return "harmonic";
    case ScheduleKind::Geometric: return "geometric";
    default: return "adaptive-least-norm";
  }
}

void StepSchedule::validate() const {
  if (!(theta0 > 0.0)) throw ConfigInvalid("schedule: theta0 must be > 0");
  switch (kind) {
    case ScheduleKind::Harmonic:
      if (!(power > 0.5) || !(power <= 1.0))
        throw ConfigInvalid("schedule: harmonic power must lie in (0.5, 1]");
      break;
    case ScheduleKind::Geometric:
      if (!(ratio > 0.0) || !(ratio < 1.0))
        throw ConfigInvalid("schedule: geometric ratio must lie in (0, 1)");
      break;
    case ScheduleKind::AdaptiveLeastNorm:
      if (!(shrink > 0.0) || !(shrink < 1.0))
        throw ConfigInvalid("schedule: shrink must lie in (0, 1)");
      if (window < 1) throw ConfigInvalid("schedule: window must be >= 1");
      break;
  }
}

double theta(const StepSchedule& s, long k, int stalled_windows) {
  switch (s.kind) {
    case ScheduleKind::Harmonic:
      return s.theta0 / std::pow(static_cast<double>(k + 1), s.power);
    case ScheduleKind::Geometric:
      return s.theta0 * std::pow(s.ratio, static_cast<double>(k));
    default:
      return s.theta0 * std::pow(s.shrink, stalled_windows);
  }
}

void SolverConfig::validate(const Problem& problem) const {
  if (problem.op.dim != problem.set.dim())
    throw ConfigInvalid("operator and set dimensions differ");
  if (x0.size() != problem.op.dim)
    throw ConfigInvalid("x0 dimension does not match the problem");
  if (!is_finite(x0)) throw ConfigInvalid("x0 must be finite");
  if (!(epsilon > 0.0)) throw ConfigInvalid("epsilon must be > 0");
  if (!(rho_f > 0.0)) throw ConfigInvalid("rho_f must be > 0");
  if (lambda && !(*lambda > 0.0)) throw ConfigInvalid("lambda must be > 0");
  if (x0.norm() > rho_f)
    throw ConfigInvalid("initial point must satisfy ||x0|| <= rho_f");
  if (effective_restart_radius() < rho_f)
    throw ConfigInvalid("restart_radius must be >= rho_f");
  if (max_iters < 1) throw ConfigInvalid("max_iters must be >= 1");
  if (trace_every < 1) throw ConfigInvalid("trace_every must be >= 1");
  schedule.validate();
  if (auto nb = set_norm_bound(problem.set); nb && *nb > rho_f)
    throw ConfigInvalid("feasible set is not contained in rho_f * B; "
                        "increase rho_f");
}

std::pair<Vector, bool> step(const Vector& x, const PenalizedOperator& op,
                             double th, const SolverConfig& cfg) {
  if (!(th > 0.0)) throw ConfigInvalid("step size must be > 0");
  if (x.norm() > cfg.effective_restart_radius()) return {cfg.x0, true};
  Vector next = x - th * eval_penalized(op, x);
  if (!is_finite(next))
    throw NonFiniteIterate("iterate overflowed; lambda or theta mis-scaled?");
  return {std::move(next), false};
}

SolveResult solve(const Problem& problem, const SolverConfig& cfg,
                  const PenaltyMethod& method) {
  cfg.validate(problem);
  const ViOperator& op = problem.op;
  const ConvexSet& set = problem.set;

  SolveResult res;
  res.m_hat = estimate_operator_bound(op, cfg.rho_f, 10000);
  res.lambda_eps = lambda_bound(cfg.rho_f, res.m_hat, cfg.epsilon);
  res.lambda = cfg.lambda.value_or(2.0 * res.lambda_eps);
  res.config = cfg;
  res.known_solution = op.known_solution;

  PenaltyMethod pm = method;
  pm.epsilon = cfg.epsilon;
  const double restart_radius = cfg.effective_restart_radius();
  const bool adaptive = cfg.schedule.kind == ScheduleKind::AdaptiveLeastNorm;

  Vector x = cfg.x0;
  long restarts = 0;
  double best_res = std::numeric_limits<double>::infinity();
  long best_iter = -1;
  Vector best = x;
  int stalled = 0;
  double window_best = std::numeric_limits<double>::infinity();
  double pre_window_best = std::numeric_limits<double>::infinity();

  auto residual_at = [&](const Vector& xi) -> double {
    try {
      return (xi - project(set, xi - op(xi))).norm();
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  auto record = [&](long k, double th, double f_norm, PenaltyZone zone,
                    bool restarted) {
    TraceRecord r;
    r.k = k;
    r.x = x;
    r.step = th;
    r.f_norm = f_norm;
    r.zone = zone;
    r.residual = residual_at(x);
    if (op.known_solution)
      r.merit = (x - *op.known_solution).squaredNorm();
    r.restarted = restarted;
    if (std::isfinite(r.residual) && r.residual < best_res) {
      best_res = r.residual;
      best = x;
      best_iter = k;
    }
    res.trace.push_back(std::move(r));
  };

  long k = 0;
  bool stopped_early = false;
  for (; k < cfg.max_iters; ++k) {
    if (!is_finite(x)) throw NonFiniteIterate("iterate became non-finite");
    const bool restart = x.norm() > restart_radius;
    const double th = theta(cfg.schedule, k, stalled);
    double f_norm = 0.0;
    PenaltyZone zone = PenaltyZone::Inside;
    Vector f;
    if (!restart) {
      PenaltyValue pv = sharp_penalty(set, x, pm);
      zone = pv.zone;
      f = op(x);
      if (pv.zone != PenaltyZone::Inside) f += res.lambda * pv.direction;
      f_norm = f.norm();
    }

    const bool traced = (k % cfg.trace_every == 0) || restart;
    if (traced) record(k, th, f_norm, zone, restart);

    if (adaptive) {
      double r = traced ? res.trace.back().residual : residual_at(x);
      if (std::isfinite(r)) window_best = std::min(window_best, r);
      if ((k + 1) % cfg.schedule.window == 0) {
        if (!(window_best < pre_window_best)) ++stalled;
        pre_window_best = std::min(pre_window_best, window_best);
        window_best = std::numeric_limits<double>::infinity();
      }
    }

    if (cfg.stop_residual && traced &&
        res.trace.back().residual <= *cfg.stop_residual) {
      ++k;
      stopped_early = true;
      break;
    }

    if (restart) {
      x = cfg.x0;
      ++restarts;
    } else {
      x = x - th * f;
      if (!is_finite(x))
        throw NonFiniteIterate("iterate overflowed; lambda or theta mis-scaled?");
    }
  }
  // final iterate
  if (!stopped_early && (res.trace.empty() || res.trace.back().k != k))
    record(k, 0.0, 0.0, sharp_penalty(set, x, pm).zone, false);

  res.best = best;
  res.best_iter = best_iter;
  res.best_residual = best_res;
  res.restarts = restarts;
  res.iters_run = k;
  res.certified_eps = op.known_solution
                          ? (best - *op.known_solution).norm()
                          : best_res;
  return res;
}

ConvergenceReport check_a1_a2(const SolveResult& result) {
  if (result.trace.empty()) throw EmptyTrace("no trace records to check");
  ConvergenceReport rep;
  rep.restarts = result.restarts;

  std::size_t last_restart = 0;
  bool any_restart = false;
  double theta_max = 0.0, f_max = 0.0;
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const auto& r = result.trace[i];
    theta_max = std::max(theta_max, r.step);
    f_max = std::max(f_max, r.f_norm);
    if (r.restarted) {
      last_restart = i;
      any_restart = true;
      rep.last_restart_iter = r.k;
    }
  }
  for (std::size_t i = any_restart ? last_restart + 1 : 0;
       i < result.trace.size(); ++i)
    rep.max_norm = std::max(rep.max_norm, result.trace[i].x.norm());
  rep.a1_bound =
      result.config.effective_restart_radius() + theta_max * f_max;
  rep.a1_pass = rep.max_norm <= rep.a1_bound;

  // A2 proxy: each restart-free trace segment whose first record lies
  // outside x* + eps*B must improve the merit somewhere later in the
  // segment (or enter the eps-ball). The record that triggers a restart is
  // the blow-out point itself, so it closes a segment without being
  // judged by it.
  const double eps2 = result.config.epsilon * result.config.epsilon;
  rep.a2_pass = true;
  std::size_t seg_begin = 0;
  auto check_segment = [&](std::size_t b, std::size_t e) {
    if (e - b < 2) return;
    const auto& first = result.trace[b];
    if (!first.merit || *first.merit <= eps2) return;
    rep.a2_applicable = true;
    for (std::size_t i = b + 1; i < e; ++i) {
      const auto& r = result.trace[i];
      if (r.merit && (*r.merit < *first.merit || *r.merit <= eps2)) return;
    }
    rep.a2_pass = false;
  };
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    if (result.trace[i].restarted) {
      check_segment(seg_begin, i);
      seg_begin = i + 1;
    }
  }
  check_segment(seg_begin, result.trace.size());
  return rep;
}

void write_trace_csv(std::ostream& out, const SolveResult& result) {
  const long dim = result.config.x0.size();
  std::string line = "k,step,f_norm,zone,residual,merit,restarted";
  for (long i = 0; i < dim; ++i) line += ",x_" + std::to_string(i);
  line += "\n";
  out << line;
  for (const auto& r : result.trace) {
    line.clear();
    line += std::to_string(r.k);
    line += ',';
    fmt_double(line, r.step);
    line += ',';
    fmt_double(line, r.f_norm);
    line += ',';
    line += zone_name(r.zone);
    line += ',';
    fmt_double(line, r.residual);
    line += ',';
    if (r.merit) fmt_double(line, *r.merit);
    line += ',';
    line += r.restarted ? '1' : '0';
    for (long i = 0; i < dim; ++i) {
      line += ',';
      fmt_double(line, r.x[i]);
    }
    line += '\n';
    out << line;
    if (r.restarted) out.flush();  // keep the last restart in truncated files
  }
}

void write_trace_csv(const std::string& path, const SolveResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open trace file: " + path);
  write_trace_csv(out, result);
}

}  // namespace visharp
