#include <doctest.h>

#include <cmath>
#include <sstream>

#include "visharp/solver.hpp"

using namespace visharp;

namespace {

Vector v1(double a) {
  Vector v(1);
  v << a;
  return v;
}

// F(x) = x - a over [-1, 1]; the VI solution is the interior zero a.
Problem shifted_identity(double a) {
  Problem p{ViOperator{}, ConvexSet::box(v1(-1), v1(1))};
  p.op.dim = 1;
  p.op.eval = [a](const Vector& x) { return Vector(x.array() - a); };
  p.op.monotone = true;
  p.op.rho_f = 2.0;
  p.op.known_solution = v1(a);
  p.op.name = "shifted-identity";
  return p;
}

SolverConfig basic_config(double rho_f, Vector x0) {
  SolverConfig cfg;
  cfg.epsilon = 0.05;
  cfg.rho_f = rho_f;
  cfg.x0 = std::move(x0);
  cfg.max_iters = 20000;
  cfg.trace_every = 10;
  return cfg;
}

PenaltyMethod projection_method(double eps = 0.05) {
  return PenaltyMethod{PenaltyVariant::Projection, eps, {}};
}

}  // namespace

TEST_CASE("theta: schedule formulas") {
  CHECK(theta({ScheduleKind::Harmonic, 1.0, 1.0}, 3) == 0.25);
  CHECK(theta({ScheduleKind::Geometric, 1.0, 1.0, 0.5}, 4) == 0.0625);
  CHECK(theta({ScheduleKind::Harmonic, 2.0, 0.75}, 0) == 2.0);
  StepSchedule ad{ScheduleKind::AdaptiveLeastNorm, 1.0, 1.0, 0.9, 0.5, 10};
  CHECK(theta(ad, 100, 0) == 1.0);
  CHECK(theta(ad, 100, 2) == 0.25);
}

TEST_CASE("schedule validation") {
  StepSchedule s;
  s.theta0 = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigInvalid);
  s = StepSchedule{};
  s.power = 0.5;  // must be strictly above the divergence threshold
  CHECK_THROWS_AS(s.validate(), ConfigInvalid);
  s.power = 1.5;
  CHECK_THROWS_AS(s.validate(), ConfigInvalid);
  s = StepSchedule{};
  s.kind = ScheduleKind::Geometric;
  s.ratio = 1.0;
  CHECK_THROWS_AS(s.validate(), ConfigInvalid);
  s = StepSchedule{};
  s.kind = ScheduleKind::AdaptiveLeastNorm;
  s.window = 0;
  CHECK_THROWS_AS(s.validate(), ConfigInvalid);
  StepSchedule ok;
  CHECK_NOTHROW(ok.validate());
  CHECK_FALSE(ok.experimental());
  ok.kind = ScheduleKind::Geometric;
  CHECK(ok.experimental());
}

TEST_CASE("step: update, restart branch, fixed point") {
  auto p = shifted_identity(0.0);
  SolverConfig cfg = basic_config(2.0, v1(0));
  PenalizedOperator op{p.op, p.set, projection_method(), 4.0};

  // plain update: f = F(0.5) = 0.5 - 0 with a constant-2 operator instead
  PenalizedOperator two = op;
  two.base.eval = [](const Vector& x) {
    return Vector(Vector::Constant(x.size(), 2.0));
  };
  auto [next, restarted] = step(v1(0.5), two, 0.1, cfg);
  CHECK(next[0] == doctest::Approx(0.3));
  CHECK_FALSE(restarted);

  // ||x|| above the restart radius 2*rho_f = 4
  auto [back, r2] = step(v1(5), op, 0.1, cfg);
  CHECK(back[0] == 0.0);
  CHECK(r2);

  // fixed point: F(x*) = 0, x* interior => exact no-op
  auto [same, r3] = step(v1(0), op, 0.3, cfg);
  CHECK(same[0] == 0.0);
  CHECK_FALSE(r3);

  CHECK_THROWS_AS(step(v1(0), op, 0.0, cfg), ConfigInvalid);
}

TEST_CASE("config validation") {
  auto p = shifted_identity(0.3);
  SolverConfig cfg = basic_config(2.0, v1(0));
  CHECK_NOTHROW(cfg.validate(p));

  SolverConfig bad = cfg;
  bad.x0 = v1(3);  // ||x0|| > rho_f
  CHECK_THROWS_AS(bad.validate(p), ConfigInvalid);

  bad = cfg;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(bad.validate(p), ConfigInvalid);

  bad = cfg;
  bad.restart_radius = 1.0;  // below rho_f
  CHECK_THROWS_AS(bad.validate(p), ConfigInvalid);

  bad = cfg;
  bad.rho_f = 0.5;  // the box [-1,1] is not inside 0.5 * B
  bad.x0 = v1(0);
  CHECK_THROWS_AS(bad.validate(p), ConfigInvalid);

  bad = cfg;
  bad.x0 = Vector(2);
  bad.x0 << 0, 0;
  CHECK_THROWS_AS(bad.validate(p), ConfigInvalid);
}

TEST_CASE("solve: interior zero of F is found") {
  auto p = shifted_identity(0.3);
  SolverConfig cfg = basic_config(2.0, v1(-0.5));
  auto res = solve(p, cfg, projection_method());
  CHECK(std::abs(res.best[0] - 0.3) < 0.01);
  CHECK(res.best_residual < 0.01);
  CHECK(res.certified_eps < 0.01);
  CHECK(res.iters_run == cfg.max_iters);
  CHECK(res.lambda == doctest::Approx(2.0 * res.lambda_eps));
  CHECK(res.lambda_eps == doctest::Approx(2.0 * res.m_hat / 0.05));
}

TEST_CASE("solve: fixed point start stays put") {
  auto p = shifted_identity(0.2);
  SolverConfig cfg = basic_config(2.0, v1(0.2));
  cfg.max_iters = 500;
  cfg.trace_every = 1;
  auto res = solve(p, cfg, projection_method());
  for (const auto& r : res.trace) {
    CHECK(r.x[0] == 0.2);
    CHECK(r.residual == 0.0);
  }
  CHECK(res.restarts == 0);
}

TEST_CASE("solve: early stop on residual threshold") {
  auto p = shifted_identity(0.3);
  SolverConfig cfg = basic_config(2.0, v1(-0.5));
  cfg.schedule.power = 0.75;  // power 1 contracts too slowly to hit 1e-3 here
  cfg.stop_residual = 1e-3;
  cfg.trace_every = 1;
  auto res = solve(p, cfg, projection_method());
  CHECK(res.iters_run < cfg.max_iters);
  CHECK(res.trace.back().residual <= 1e-3);
}

TEST_CASE("solve: restarts are finite and stop occurring") {
  for (const auto& name : builtin_problem_names()) {
    auto p = builtin_problem(name);
    SolverConfig cfg;
    cfg.epsilon = 0.05;
    cfg.rho_f = p.op.rho_f;
    cfg.x0 = Vector::Zero(p.op.dim);
    cfg.x0[0] = p.op.rho_f;  // start on the rho_F sphere
    cfg.max_iters = 20000;
    cfg.trace_every = 1;
    auto res = solve(p, cfg, projection_method());
    long late_restarts = 0;
    for (const auto& r : res.trace)
      if (r.restarted && r.k >= cfg.max_iters / 2) ++late_restarts;
    CHECK(late_restarts == 0);
  }
}

TEST_CASE("solve: rescaling lambda into the steps leaves iterates unchanged") {
  // With lambda a power of two, theta*(F + lambda*P) and
  // (lambda*theta)*(F/lambda + P) round identically in binary.
  auto p = builtin_problem("fig1");
  const double lambda = 128.0;
  PenaltyMethod pm = projection_method(0.05);

  ViOperator scaled = p.op;
  auto base_eval = p.op.eval;
  scaled.eval = [base_eval, lambda](const Vector& x) {
    return Vector(base_eval(x) / lambda);
  };

  Vector xa = v1(0.9), xb = v1(0.9);
  StepSchedule sched{ScheduleKind::Harmonic, 0.5, 1.0};
  for (long k = 0; k < 1000; ++k) {
    double th = theta(sched, k);
    if (xa.norm() > 2.0) {
      xa = v1(0.9);
      xb = v1(0.9);
      continue;
    }
    PenaltyValue pva = sharp_penalty(p.set, xa, pm);
    Vector fa = p.op(xa) + lambda * pva.direction;
    xa = xa - th * fa;

    PenaltyValue pvb = sharp_penalty(p.set, xb, pm);
    Vector fb = scaled.eval(xb) + pvb.direction;
    xb = xb - (lambda * th) * fb;

    for (long i = 0; i < xa.size(); ++i)
      CHECK(std::abs(xa[i] - xb[i]) <= 1e-12);
  }
}

TEST_CASE("solve: determinism") {
  auto p = builtin_problem("affine");
  SolverConfig cfg;
  cfg.epsilon = 0.05;
  cfg.rho_f = p.op.rho_f;
  cfg.x0 = Vector::Zero(2);
  cfg.max_iters = 2000;
  cfg.trace_every = 7;
  auto a = solve(p, cfg, projection_method());
  auto b = solve(p, cfg, projection_method());
  std::ostringstream ca, cb;
  write_trace_csv(ca, a);
  write_trace_csv(cb, b);
  CHECK(ca.str() == cb.str());
  CHECK(!ca.str().empty());
}

TEST_CASE("check_a1_a2 on a successful run") {
  auto p = builtin_problem("fig1");
  SolverConfig cfg;
  cfg.epsilon = 0.05;
  cfg.rho_f = p.op.rho_f;
  cfg.x0 = v1(1.5);
  cfg.max_iters = 20000;
  cfg.trace_every = 5;
  auto res = solve(p, cfg, projection_method());
  auto rep = check_a1_a2(res);
  CHECK(rep.a1_pass);
  CHECK(rep.a2_pass);
  CHECK(rep.restarts == res.restarts);
}

TEST_CASE("check_a1_a2: constant trace and synthetic A1 failure") {
  SolveResult res;
  res.config = basic_config(2.0, v1(0.2));
  res.known_solution = v1(0.2);

  CHECK_THROWS_AS(check_a1_a2(res), EmptyTrace);

  for (long k = 0; k < 5; ++k) {
    TraceRecord r;
    r.k = k;
    r.x = v1(0.2);
    r.merit = 0.0;
    res.trace.push_back(r);
  }
  auto rep = check_a1_a2(res);
  CHECK(rep.a1_pass);
  CHECK_FALSE(rep.a2_applicable);  // never starts outside the eps-ball
  CHECK(rep.a2_pass);

  // norms grow far past the restart radius with no restart flag: A1 fails
  SolveResult runaway;
  runaway.config = basic_config(2.0, v1(0));
  for (long k = 0; k < 5; ++k) {
    TraceRecord r;
    r.k = k;
    r.x = v1(10.0 + k);
    r.step = 0.1;
    r.f_norm = 1.0;
    runaway.trace.push_back(r);
  }
  CHECK_FALSE(check_a1_a2(runaway).a1_pass);
}

TEST_CASE("trace CSV schema") {
  auto p = shifted_identity(0.1);
  SolverConfig cfg = basic_config(2.0, v1(0.5));
  cfg.max_iters = 50;
  cfg.trace_every = 1;
  auto res = solve(p, cfg, projection_method());
  std::ostringstream out;
  write_trace_csv(out, res);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "k,step,f_norm,zone,residual,merit,restarted,x_0");
  std::string row;
  long rows = 0;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == static_cast<long>(res.trace.size()));
  // first data row starts with k=0 and ends with the start point
  std::istringstream in2(out.str());
  std::getline(in2, header);
  std::getline(in2, row);
  CHECK(row.substr(0, 2) == "0,");
  CHECK(row.find(",inside,") != std::string::npos);
  CHECK(row.substr(row.rfind(',') + 1) == "0.5");
}
