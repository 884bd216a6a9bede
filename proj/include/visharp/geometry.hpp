#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "visharp/linalg.hpp"

namespace visharp {

/// Default stopping tolerances for the iterative geometry routines.
/// Far below the epsilon accuracy targets used by the solver.
inline constexpr double kTolProj = 1e-10;
inline constexpr double kTolGauge = 1e-10;

/// Convex h with a subgradient selection; the set it describes is
/// {x : h(x) <= level}.
struct ConstraintFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgradient;
  std::optional<double> lipschitz_bound;  // L near the set, if known
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

struct Box {
  Vector lower;
  Vector upper;
};

/// One face normal·x <= offset. Normals are unit length after construction.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

struct Halfspaces {
  std::vector<Halfspace> faces;
  long dim = 0;
};

struct LevelSet {
  ConstraintFunction h;
  long dim = 0;
  std::optional<Vector> interior_point;
  double level = 0.0;  // set is {h <= level}; 0 unless expanded
};

/// Closed bounded convex set. `pad` is a Euclidean expansion amount: the
/// represented set is base + pad*B (always 0 for Ball and LevelSet, which
/// absorb expansions into their own parameters).
class ConvexSet {
 public:
  using Variant = std::variant<Ball, Box, Halfspaces, LevelSet>;

  static ConvexSet ball(Vector center, double radius);
  static ConvexSet box(Vector lower, Vector upper);
  /// Throws UnboundedSet if the axis-direction ray test finds an
  /// unbounded recession direction.
  static ConvexSet halfspaces(std::vector<Halfspace> faces, long dim);
  static ConvexSet level_set(ConstraintFunction h, long dim,
                             std::optional<Vector> interior_point = {});

  long dim() const { return dim_; }
  const Variant& variant() const { return v_; }
  double pad() const { return pad_; }

  friend ConvexSet expand(const ConvexSet& set, double eps);

 private:
  ConvexSet(Variant v, long dim, double pad) : v_(std::move(v)), dim_(dim), pad_(pad) {}

  Variant v_;
  long dim_ = 0;
  double pad_ = 0.0;
};

/// Euclidean projection. Closed form for Ball/Box, Dykstra iteration for
/// Halfspaces, and for LevelSet the boundary point of the segment
/// [interior_point, x] found by bisection on h (an approximate projection;
/// the cone constructions only need a boundary point on that ray).
Vector project(const ConvexSet& set, const Vector& x, double tol = kTolProj);

double distance(const ConvexSet& set, const Vector& x, double tol = kTolProj);

/// distance(set, x) <= tol; for LevelSet tests h(x) <= level + tol*max(1, L).
bool contains(const ConvexSet& set, const Vector& x, double tol = 0.0);

/// inf{theta >= 0 : center + (x - center)/theta in set}, by bisection to
/// relative tolerance `tol`. Requires `center` strictly interior.
double minkowski_gauge(const ConvexSet& set, const Vector& x,
                       const Vector& center, double tol = kTolGauge);

/// Representation of set + eps*B. LevelSet needs a Lipschitz bound and
/// relaxes the level instead (an outer approximation, exact when h is the
/// distance-like gauge of the set).
ConvexSet expand(const ConvexSet& set, double eps);

/// Natural convex description of the set: h with h <= 0 on the set,
/// with a subgradient selection. Used by the Subgradient/Minkowski cone
/// constructions when the set is not already a LevelSet.
ConstraintFunction constraint_function(const ConvexSet& set);

/// A strictly interior point when one is cheaply available
/// (Ball center, Box midpoint, LevelSet's stored point).
std::optional<Vector> interior_point(const ConvexSet& set);

/// Random points of a set (and of its Euclidean expansions), used by the
/// sampling certificates and property tests. Halfspaces use a hit-and-run
/// chain; coverage is what matters, not exact uniformity.
class SetSampler {
 public:
  SetSampler(const ConvexSet& set, std::uint64_t seed);

  Vector sample();
  /// Point of set + eps*B.
  Vector sample_expanded(double eps);
  /// Like sample_expanded but half the draws sit near the outer boundary,
  /// where polar-cone inequalities are tight.
  Vector sample_expanded_boundary_biased(double eps);

 private:
  Vector sample_base();

  ConvexSet set_;
  Rng rng_;
  Vector state_;  // hit-and-run chain state for Halfspaces
};

}  // namespace visharp
