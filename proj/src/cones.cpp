#include "visharp/cones.hpp"

#include <iostream>

namespace visharp {

const char* zone_name(PenaltyZone z) {
  switch (z) {
    case PenaltyZone::Inside: return "inside";
    case PenaltyZone::Shell: return "shell";
    default: return "outside";
  }
}

namespace {

Vector require_nonzero(Vector g) {
  if (g.norm() == 0.0)
    throw ZeroSubgradient("constraint subgradient vanished at query point");
  return g;
}

std::optional<Vector> slater_point(const ConvexSet& set,
                                   const PenaltyMethod& method) {
  if (method.interior_point) return method.interior_point;
  return interior_point(set);
}

// LevelSet projections are ray surrogates, so x - proj(x) need not lie in
// the polar cone there and the (x - proj)/d strong guarantee does not apply.
bool projection_is_exact(const ConvexSet& set) {
  return !std::holds_alternative<LevelSet>(set.variant());
}

Vector gauge_boundary_subgradient(const ConvexSet& set, const Vector& x,
                                  const Vector& center) {
  ConstraintFunction h = constraint_function(set);
  double mu = minkowski_gauge(set, x, center);
  Vector boundary = center + (x - center) / mu;
  return require_nonzero(h.subgradient(boundary));
}

}  // namespace

Vector polar_cone_element(const ConvexSet& set, const Vector& x,
                          const PenaltyMethod& method) {
  check_dim(set.dim(), x);
  switch (method.variant) {
    case PenaltyVariant::Projection: {
      if (!projection_is_exact(set)) {
        // The ray surrogate projection is not the Euclidean one, so the
        // residual may leave the polar cone; use the boundary subgradient.
        auto center = slater_point(set, method);
        if (!center)
          throw NoInteriorPoint(
              "projection penalty on a level set needs an interior point");
        ConstraintFunction h = constraint_function(set);
        if (h.value(x) < 0.0)
          throw InsideSet("no nonzero polar cone element strictly inside the set");
        return gauge_boundary_subgradient(set, x, *center);
      }
      Vector p = x - project(set, x);
      if (p.norm() == 0.0 && distance(set, x) == 0.0) {
        ConstraintFunction h = constraint_function(set);
        if (h.value(x) < 0.0)
          throw InsideSet("no nonzero polar cone element strictly inside the set");
      }
      return p;
    }
    case PenaltyVariant::Subgradient: {
      ConstraintFunction h = constraint_function(set);
      double hx = h.value(x);
      if (hx <= 0.0 && !slater_point(set, method))
        throw SlaterViolation(
            "subgradient penalty needs h(x) > 0 or a known Slater point");
      if (hx < 0.0)
        throw InsideSet("no nonzero polar cone element strictly inside the set");
      return require_nonzero(h.subgradient(x));
    }
    default: {  // Minkowski
      auto center = slater_point(set, method);
      if (!center)
        throw NoInteriorPoint("Minkowski penalty needs an interior point");
      ConstraintFunction h = constraint_function(set);
      if (h.value(x) < 0.0)
        throw InsideSet("no nonzero polar cone element strictly inside the set");
      return gauge_boundary_subgradient(set, x, *center);
    }
  }
}

PenaltyValue sharp_penalty(const ConvexSet& set, const Vector& x,
                           const PenaltyMethod& method) {
  check_dim(set.dim(), x);
  const double d = distance(set, x);
  if (d <= 0.0)
    return PenaltyValue{Vector::Zero(set.dim()), PenaltyZone::Inside, false};
  Vector p = polar_cone_element(set, x, method);
  const double n = p.norm();
  if (n == 0.0)  // boundary of the set: zero by selection
    return PenaltyValue{Vector::Zero(set.dim()), PenaltyZone::Inside, false};
  Vector u = p / n;
  if (d <= method.epsilon)
    return PenaltyValue{std::move(u), PenaltyZone::Shell, false};
  bool strong;
  if (method.variant == PenaltyVariant::Projection && projection_is_exact(set)) {
    // p.(x - y) >= d >= eps for the unit projection residual, no check needed.
    strong = true;
  } else {
    strong = certify_strong(set, x, u, method.epsilon);
    if (!strong)
      std::cerr << "warning: eps-strong certificate failed for a "
                << (method.variant == PenaltyVariant::Projection ? "projection"
                    : method.variant == PenaltyVariant::Subgradient
                        ? "subgradient"
                        : "Minkowski")
                << " penalty element\n";
  }
  return PenaltyValue{std::move(u), PenaltyZone::Outside, strong};
}

bool certify_strong(const ConvexSet& set, const Vector& x, const Vector& p,
                    double eps, int samples, double tol, std::uint64_t seed) {
  SetSampler sampler(set, seed);
  const double pn = p.norm();
  for (int i = 0; i < samples; ++i) {
    // Alternate between the expanded-set form p.(x - y') >= 0 and the
    // equivalent base-set form p.(x - y) >= eps*||p||, which probes the
    // worst-case expansion direction y' = y + eps*p/||p|| exactly.
    if (i % 2 == 0) {
      Vector y = sampler.sample_expanded_boundary_biased(eps);
      if (p.dot(x - y) < -tol) return false;
    } else {
      Vector y = sampler.sample();
      if (p.dot(x - y) < eps * pn - tol) return false;
    }
  }
  return true;
}

}  // namespace visharp
