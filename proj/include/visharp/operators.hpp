#pragma once

#include <string>

#include "visharp/cones.hpp"
#include "visharp/geometry.hpp"

namespace visharp {

/// Single-valued VI operator F with its metadata. `rho_f` is the
/// long-range orientation radius; `kappa` is stored as a diagnostic only.
struct ViOperator {
  std::function<Vector(const Vector&)> eval;
  long dim = 0;
  bool monotone = false;
  double rho_f = 1.0;
  std::optional<double> kappa;
  std::optional<Vector> known_solution;
  std::string name;

  /// eval with finiteness checks on input and output.
  Vector operator()(const Vector& x) const;
};

/// F_lambda = F + lambda * P (the sharp penalty of `set` under `method`).
struct PenalizedOperator {
  ViOperator base;
  ConvexSet set;
  PenaltyMethod method;
  double lambda = 1.0;
};

/// F(x) + lambda * sharp_penalty(set, x).direction. Equals F(x) exactly
/// inside the set (the penalty direction is the zero vector there).
Vector eval_penalized(const PenalizedOperator& op, const Vector& x);

/// safety * max ||F(x)|| over seeded random points of radius*B
/// (half of them pushed to the sphere, where the max typically sits).
double estimate_operator_bound(const ViOperator& op, double radius,
                               int samples, double safety = 1.5,
                               std::uint64_t seed = 4242);

/// Lambda_eps = rho_f * M / eps, the penalty threshold.
double lambda_bound(double rho_f, double m_bound, double eps);

/// Empirical min of f(x).(x - target) over seeded samples of
/// region_radius*B \ (target + eps*B). Positive certifies strong
/// orientation with that margin.
double orientation_margin(const std::function<Vector(const Vector&)>& f,
                          long dim, const Vector& target, double region_radius,
                          double eps, int samples, std::uint64_t seed = 7331);
double orientation_margin(const ViOperator& op, const Vector& target,
                          double region_radius, double eps, int samples,
                          std::uint64_t seed = 7331);
double orientation_margin(const PenalizedOperator& op, const Vector& target,
                          double region_radius, double eps, int samples,
                          std::uint64_t seed = 7331);

struct Problem {
  ViOperator op;
  ConvexSet set;
};

/// Built-in catalog: `fig1` (1-D non-monotone oriented operator on [-1,1]),
/// `affine` (Ax + b over a box, positive definite symmetric part),
/// `qp-grad` (gradient of a convex quadratic over a ball),
/// `saddle` (regularized bilinear saddle-point VI on a product of boxes).
/// All constants are fixed, so solutions and traces are reproducible.
Problem builtin_problem(const std::string& name);

const std::vector<std::string>& builtin_problem_names();

}  // namespace visharp
