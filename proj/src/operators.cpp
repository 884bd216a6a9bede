#include "visharp/operators.hpp"

#include <cmath>

namespace visharp {

Vector ViOperator::operator()(const Vector& x) const {
  check_dim(dim, x);
  if (!is_finite(x)) throw NonFiniteOperatorValue("operator input not finite");
  Vector out = eval(x);
  if (!is_finite(out)) throw NonFiniteOperatorValue("operator value not finite");
  return out;
}

Vector eval_penalized(const PenalizedOperator& op, const Vector& x) {
  PenaltyValue p = sharp_penalty(op.set, x, op.method);
  if (p.zone == PenaltyZone::Inside) return op.base(x);
  return op.base(x) + op.lambda * p.direction;
}

double estimate_operator_bound(const ViOperator& op, double radius,
                               int samples, double safety,
                               std::uint64_t seed) {
  if (samples < 1) throw NonPositiveArgument("samples must be >= 1");
  Rng rng(seed);
  Vector origin = Vector::Zero(op.dim);
  double m = op(origin).norm();
  for (int i = 0; i < samples; ++i) {
    Vector x = (i % 2 == 0) ? radius * random_unit(op.dim, rng)
                            : random_in_ball(origin, radius, rng);
    m = std::max(m, op(x).norm());
  }
  return safety * m;
}

double lambda_bound(double rho_f, double m_bound, double eps) {
  if (!(rho_f > 0.0) || !(m_bound >= 0.0) || !(eps > 0.0))
    throw NonPositiveArgument("lambda_bound needs positive arguments");
  return rho_f * m_bound / eps;
}

double orientation_margin(const std::function<Vector(const Vector&)>& f,
                          long dim, const Vector& target, double region_radius,
                          double eps, int samples, std::uint64_t seed) {
  check_dim(dim, target);
  Rng rng(seed);
  Vector origin = Vector::Zero(dim);
  double margin = std::numeric_limits<double>::infinity();
  int got = 0;
  int attempts = 0;
  const int max_attempts = samples * 100;
  while (got < samples && attempts++ < max_attempts) {
    Vector x = random_in_ball(origin, region_radius, rng);
    if ((x - target).norm() <= eps) continue;
    margin = std::min(margin, f(x).dot(x - target));
    ++got;
  }
  if (got == 0)
    throw Error("orientation_margin: sampling region is empty");
  return margin;
}

double orientation_margin(const ViOperator& op, const Vector& target,
                          double region_radius, double eps, int samples,
                          std::uint64_t seed) {
  return orientation_margin([&](const Vector& x) { return op(x); }, op.dim,
                            target, region_radius, eps, samples, seed);
}

double orientation_margin(const PenalizedOperator& op, const Vector& target,
                          double region_radius, double eps, int samples,
                          std::uint64_t seed) {
  return orientation_margin(
      [&](const Vector& x) { return eval_penalized(op, x); }, op.base.dim,
      target, region_radius, eps, samples, seed);
}

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Problem make_fig1() {
  ViOperator op;
  op.dim = 1;
  op.eval = [](const Vector& x) {
    Vector f(1);
    f[0] = x[0] + 0.3 * x[0] * x[0] * std::sin(25.0 * x[0]);
    return f;
  };
  op.monotone = false;
  op.rho_f = 2.0;
  op.known_solution = Vector::Zero(1);
  op.name = "fig1";
  Vector lo(1), hi(1);
  lo << -1.0;
  hi << 1.0;
  return Problem{std::move(op), ConvexSet::box(lo, hi)};
}

Problem make_affine() {
  // A = S + skew with S positive definite; b chosen so the unconstrained
  // zero of F sits strictly inside the box, hence x* is that zero.
  Matrix a(2, 2);
  a << 2.0, 1.5, -0.5, 1.5;
  Vector xstar = vec2(0.2, -0.3);
  Vector b = -a * xstar;
  ViOperator op;
  op.dim = 2;
  op.eval = [a, b](const Vector& x) { return Vector(a * x + b); };
  op.monotone = true;
  op.rho_f = 3.0;
  op.known_solution = xstar;
  op.name = "affine";
  return Problem{std::move(op), ConvexSet::box(vec2(-1, -1), vec2(1, 1))};
}

Problem make_qp_grad() {
  // F = Q (x - a): gradient of the convex quadratic 0.5 (x-a)' Q (x-a)
  // over the unit ball; a is interior so x* = a.
  Matrix q(2, 2);
  q << 3.0, 1.0, 1.0, 2.0;
  Vector a = vec2(0.3, 0.1);
  ViOperator op;
  op.dim = 2;
  op.eval = [q, a](const Vector& x) { return Vector(q * (x - a)); };
  op.monotone = true;
  op.rho_f = 2.5;
  op.known_solution = a;
  op.name = "qp-grad";
  return Problem{std::move(op), ConvexSet::ball(Vector::Zero(2), 1.0)};
}

Problem make_saddle() {
  // Regularized bilinear saddle point min_x max_y 0.25 x^2 + x y - 0.25 y^2
  // + linear terms, over [-1,1] x [-1,1]. The 0.5 I symmetric part keeps
  // the operator strongly monotone; the zero of F is interior.
  Vector zstar = vec2(0.1, -0.2);
  ViOperator op;
  op.dim = 2;
  op.eval = [zstar](const Vector& z) {
    Vector f(2);
    f[0] = 0.5 * z[0] + z[1];
    f[1] = -z[0] + 0.5 * z[1];
    f[0] -= 0.5 * zstar[0] + zstar[1];
    f[1] -= -zstar[0] + 0.5 * zstar[1];
    return f;
  };
  op.monotone = true;
  op.rho_f = 3.0;
  op.known_solution = zstar;
  op.name = "saddle";
  return Problem{std::move(op), ConvexSet::box(vec2(-1, -1), vec2(1, 1))};
}

}  // namespace

Problem builtin_problem(const std::string& name) {
  if (name == "fig1") return make_fig1();
  if (name == "affine") return make_affine();
  if (name == "qp-grad") return make_qp_grad();
  if (name == "saddle") return make_saddle();
  throw UnknownProblem(name);
}

const std::vector<std::string>& builtin_problem_names() {
  static const std::vector<std::string> names = {"fig1", "affine", "qp-grad",
                                                 "saddle"};
  return names;
}

}  // namespace visharp
