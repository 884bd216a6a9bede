#pragma once

#include "visharp/geometry.hpp"

namespace visharp {

enum class PenaltyVariant { Projection, Subgradient, Minkowski };

/// Choice among the three polar-cone constructions, plus the epsilon of
/// the epsilon-strong cone.
struct PenaltyMethod {
  PenaltyVariant variant = PenaltyVariant::Projection;
  double epsilon = 0.1;
  /// Slater / gauge center for the Subgradient and Minkowski variants when
  /// the set does not carry one itself.
  std::optional<Vector> interior_point;
};

enum class PenaltyZone { Inside, Shell, Outside };

/// One selected element of the composite cone map: zero inside the set,
/// unit norm otherwise. `strong` records whether the epsilon-strong
/// inequality is certified for Outside points.
struct PenaltyValue {
  Vector direction;
  PenaltyZone zone = PenaltyZone::Inside;
  bool strong = false;
};

const char* zone_name(PenaltyZone z);

/// Unnormalized polar-cone element at x (x not interior to the set):
///   Projection: x - proj(x)
///   Subgradient: a subgradient of the defining convex h at x (h(x) > 0)
///   Minkowski: a subgradient of h at the gauge boundary point of the ray
///              from the interior point through x.
Vector polar_cone_element(const ConvexSet& set, const Vector& x,
                          const PenaltyMethod& method);

/// The sharp penalty selection. Zone by d = distance(set, x):
/// d == 0 -> Inside (zero); d <= eps -> Shell (plain polar cone element,
/// normalized); d > eps -> Outside, normalized and certified against the
/// eps-expansion. The projection element certifies automatically since
/// p.(x - y) >= d >= eps for unit p = (x - proj(x))/d.
PenaltyValue sharp_penalty(const ConvexSet& set, const Vector& x,
                           const PenaltyMethod& method);

/// Sampling check of the eps-strong inequality p.(x - y') >= -tol over
/// boundary-biased samples y' of set + eps*B. Used to certify `strong`
/// for the Subgradient/Minkowski constructions.
bool certify_strong(const ConvexSet& set, const Vector& x, const Vector& p,
                    double eps, int samples = 10000, double tol = 1e-8,
                    std::uint64_t seed = 9001);

}  // namespace visharp
