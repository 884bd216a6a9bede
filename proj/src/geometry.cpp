#include "visharp/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace visharp {

namespace {

double box_distance(const Box& b, const Vector& x) {
  double s = 0.0;
  for (long i = 0; i < x.size(); ++i) {
    double d = std::max({b.lower[i] - x[i], x[i] - b.upper[i], 0.0});
    s += d * d;
  }
  return std::sqrt(s);
}

Vector box_clamp(const Box& b, const Vector& x) {
  return x.cwiseMax(b.lower).cwiseMin(b.upper);
}

double max_face_slack(const Halfspaces& hs, const Vector& x) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& f : hs.faces) m = std::max(m, f.normal.dot(x) - f.offset);
  return m;
}

// Dykstra's cyclic projection onto an intersection of halfspaces.
Vector dykstra_project(const Halfspaces& hs, const Vector& x, double tol) {
  const std::size_t m = hs.faces.size();
  Vector cur = x;
  std::vector<Vector> corr(m, Vector::Zero(x.size()));
  const int max_cycles = 100000;
  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    Vector prev = cur;
    for (std::size_t i = 0; i < m; ++i) {
      Vector y = cur + corr[i];
      double slack = hs.faces[i].normal.dot(y) - hs.faces[i].offset;
      Vector proj = slack > 0.0 ? Vector(y - slack * hs.faces[i].normal) : y;
      corr[i] = y - proj;
      cur = proj;
    }
    if ((cur - prev).norm() <= tol && max_face_slack(hs, cur) <= tol)
      return cur;
  }
  throw DidNotConverge("Dykstra projection did not reach tolerance");
}

double levelset_lipschitz(const LevelSet& ls) {
  return ls.h.lipschitz_bound.value_or(1.0);
}

// Boundary point of [interior_point, x] with h = level, by bisection.
Vector levelset_ray_to_boundary(const LevelSet& ls, const Vector& x, double tol) {
  if (!ls.interior_point)
    throw NoInteriorPoint("LevelSet projection needs an interior point");
  const Vector& c = *ls.interior_point;
  if (ls.h.value(c) >= ls.level)
    throw CenterNotInterior("stored interior point has h >= level");
  double lo = 0.0, hi = 1.0;  // point(t) = c + t (x - c)
  double len = (x - c).norm();
  while ((hi - lo) * len > tol) {
    double mid = 0.5 * (lo + hi);
    if (ls.h.value(c + mid * (x - c)) > ls.level)
      hi = mid;
    else
      lo = mid;
  }
  return c + 0.5 * (lo + hi) * (x - c);
}

Vector base_project(const ConvexSet& set, const Vector& x, double tol) {
  return std::visit(
      [&](const auto& v) -> Vector {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          Vector d = x - v.center;
          double n = d.norm();
          if (n <= v.radius) return x;
          return v.center + (v.radius / n) * d;
        } else if constexpr (std::is_same_v<T, Box>) {
          return box_clamp(v, x);
        } else if constexpr (std::is_same_v<T, Halfspaces>) {
          if (max_face_slack(v, x) <= 0.0) return x;
          return dykstra_project(v, x, tol);
        } else {
          if (v.h.value(x) <= v.level) return x;
          return levelset_ray_to_boundary(v, x, tol);
        }
      },
      set.variant());
}

// Membership for the padded set, exact per variant (no Dykstra needed for
// Halfspaces unless padded).
bool member(const ConvexSet& set, const Vector& x, double tol) {
  const double pad = set.pad();
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return (x - v.center).norm() <= v.radius + tol;
        } else if constexpr (std::is_same_v<T, Box>) {
          return box_distance(v, x) <= pad + tol;
        } else if constexpr (std::is_same_v<T, Halfspaces>) {
          if (pad == 0.0) return max_face_slack(v, x) <= tol;
          return (x - dykstra_project(v, x, kTolProj)).norm() <= pad + tol;
        } else {
          return v.h.value(x) <= v.level + tol;
        }
      },
      set.variant());
}

bool strictly_interior(const ConvexSet& set, const Vector& x) {
  const double pad = set.pad();
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return (x - v.center).norm() < v.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          if (pad > 0.0) return box_distance(v, x) < pad;
          return ((x - v.lower).minCoeff() > 0.0) && ((v.upper - x).minCoeff() > 0.0);
        } else if constexpr (std::is_same_v<T, Halfspaces>) {
          if (pad > 0.0)
            return (x - dykstra_project(v, x, kTolProj)).norm() < pad;
          return max_face_slack(v, x) < 0.0;
        } else {
          return v.h.value(x) < v.level;
        }
      },
      set.variant());
}

}  // namespace

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (!(radius > 0.0) || !is_finite(center))
    throw ConfigInvalid("Ball needs finite center and positive radius");
  long d = center.size();
  return ConvexSet(Ball{std::move(center), radius}, d, 0.0);
}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size())
    throw DimensionMismatch(lower.size(), upper.size());
  if (!is_finite(lower) || !is_finite(upper) ||
      ((upper - lower).minCoeff() < 0.0))
    throw ConfigInvalid("Box needs finite bounds with lower <= upper");
  long d = lower.size();
  return ConvexSet(Box{std::move(lower), std::move(upper)}, d, 0.0);
}

ConvexSet ConvexSet::halfspaces(std::vector<Halfspace> faces, long dim) {
  for (auto& f : faces) {
    check_dim(dim, f.normal);
    double n = f.normal.norm();
    if (!(n > 0.0) || !std::isfinite(f.offset))
      throw ConfigInvalid("Halfspace needs a nonzero normal and finite offset");
    f.normal /= n;
    f.offset /= n;
  }
  // Axis-direction ray test: a recession ray survives a direction d unless
  // some face has normal.d > 0. Rejection is conservative.
  for (long i = 0; i < dim; ++i) {
    for (double sgn : {1.0, -1.0}) {
      bool blocked = false;
      for (const auto& f : faces)
        if (sgn * f.normal[i] > 1e-9) { blocked = true; break; }
      if (!blocked)
        throw UnboundedSet("halfspace set is unbounded along an axis direction");
    }
  }
  return ConvexSet(Halfspaces{std::move(faces), dim}, dim, 0.0);
}

ConvexSet ConvexSet::level_set(ConstraintFunction h, long dim,
                               std::optional<Vector> interior_point) {
  if (interior_point) {
    check_dim(dim, *interior_point);
    if (h.value(*interior_point) >= 0.0)
      throw ConfigInvalid("LevelSet interior point must have h < 0");
  }
  return ConvexSet(LevelSet{std::move(h), dim, std::move(interior_point), 0.0},
                   dim, 0.0);
}

Vector project(const ConvexSet& set, const Vector& x, double tol) {
  check_dim(set.dim(), x);
  Vector y = base_project(set, x, tol);
  if (set.pad() > 0.0) {
    double d = (x - y).norm();
    if (d <= set.pad()) return x;
    return y + (set.pad() / d) * (x - y);
  }
  return y;
}

double distance(const ConvexSet& set, const Vector& x, double tol) {
  check_dim(set.dim(), x);
  double d = (x - base_project(set, x, tol)).norm();
  return std::max(0.0, d - set.pad());
}

bool contains(const ConvexSet& set, const Vector& x, double tol) {
  check_dim(set.dim(), x);
  if (const auto* ls = std::get_if<LevelSet>(&set.variant()))
    return ls->h.value(x) <= ls->level + tol * std::max(1.0, levelset_lipschitz(*ls));
  return distance(set, x) <= tol;
}

double minkowski_gauge(const ConvexSet& set, const Vector& x,
                       const Vector& center, double tol) {
  check_dim(set.dim(), x);
  check_dim(set.dim(), center);
  if (!strictly_interior(set, center))
    throw CenterNotInterior("gauge center must be strictly interior");
  Vector d = x - center;
  if (d.norm() == 0.0)
    throw ConfigInvalid("gauge undefined at the center itself");
  auto inside = [&](double theta) { return member(set, center + d / theta, 0.0); };
  double lo, hi;
  if (inside(1.0)) {
    hi = 1.0;
    lo = 0.5;
    while (inside(lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-18) throw DidNotConverge("gauge bracket failed (set unbounded along ray?)");
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    while (!inside(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e18) throw DidNotConverge("gauge bracket failed (center not interior?)");
    }
  }
  while (hi - lo > tol * hi) {
    double mid = 0.5 * (lo + hi);
    if (inside(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

ConvexSet expand(const ConvexSet& set, double eps) {
  if (!(eps > 0.0)) throw NonPositiveArgument("expand needs eps > 0");
  return std::visit(
      [&](const auto& v) -> ConvexSet {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return ConvexSet(Ball{v.center, v.radius + eps}, set.dim(), 0.0);
        } else if constexpr (std::is_same_v<T, LevelSet>) {
          if (!v.h.lipschitz_bound)
            throw MissingLipschitzBound(
                "LevelSet expansion needs a Lipschitz bound");
          LevelSet out = v;
          out.level += *v.h.lipschitz_bound * eps;
          return ConvexSet(std::move(out), set.dim(), 0.0);
        } else {
          return ConvexSet(set.variant(), set.dim(), set.pad() + eps);
        }
      },
      set.variant());
}

ConstraintFunction constraint_function(const ConvexSet& set) {
  if (set.pad() > 0.0) {
    // Distance-based description of the padded set.
    ConvexSet copy = set;
    return ConstraintFunction{
        [copy](const Vector& x) { return distance(copy, x); },
        [copy](const Vector& x) -> Vector {
          Vector y = project(copy, x);
          double d = (x - y).norm();
          if (d == 0.0) return Vector::Zero(x.size());
          return (x - y) / d;
        },
        1.0};
  }
  return std::visit(
      [&](const auto& v) -> ConstraintFunction {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          Vector c = v.center;
          double r = v.radius;
          return {[c, r](const Vector& x) { return (x - c).norm() - r; },
                  [c](const Vector& x) -> Vector {
                    Vector d = x - c;
                    double n = d.norm();
                    if (n == 0.0) return Vector::Zero(x.size());
                    return d / n;
                  },
                  1.0};
        } else if constexpr (std::is_same_v<T, Box>) {
          Vector lo = v.lower, up = v.upper;
          return {[lo, up](const Vector& x) {
                    double m = -std::numeric_limits<double>::infinity();
                    for (long i = 0; i < x.size(); ++i)
                      m = std::max({m, lo[i] - x[i], x[i] - up[i]});
                    return m;
                  },
                  [lo, up](const Vector& x) -> Vector {
                    long best = 0;
                    double sgn = -1.0, m = lo[0] - x[0];
                    for (long i = 0; i < x.size(); ++i) {
                      if (lo[i] - x[i] > m) { m = lo[i] - x[i]; best = i; sgn = -1.0; }
                      if (x[i] - up[i] > m) { m = x[i] - up[i]; best = i; sgn = 1.0; }
                    }
                    Vector g = Vector::Zero(x.size());
                    g[best] = sgn;
                    return g;
                  },
                  1.0};
        } else if constexpr (std::is_same_v<T, Halfspaces>) {
          Halfspaces hs = v;
          return {[hs](const Vector& x) { return max_face_slack(hs, x); },
                  [hs](const Vector& x) -> Vector {
                    std::size_t best = 0;
                    double m = -std::numeric_limits<double>::infinity();
                    for (std::size_t i = 0; i < hs.faces.size(); ++i) {
                      double s = hs.faces[i].normal.dot(x) - hs.faces[i].offset;
                      if (s > m) { m = s; best = i; }
                    }
                    return hs.faces[best].normal;
                  },
                  1.0};
        } else {
          ConstraintFunction h = v.h;
          if (v.level != 0.0) {
            double lvl = v.level;
            auto base = v.h.value;
            h.value = [base, lvl](const Vector& x) { return base(x) - lvl; };
          }
          return h;
        }
      },
      set.variant());
}

std::optional<Vector> interior_point(const ConvexSet& set) {
  return std::visit(
      [&](const auto& v) -> std::optional<Vector> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return v.center;
        } else if constexpr (std::is_same_v<T, Box>) {
          return Vector(0.5 * (v.lower + v.upper));
        } else if constexpr (std::is_same_v<T, Halfspaces>) {
          return std::nullopt;
        } else {
          return v.interior_point;
        }
      },
      set.variant());
}

SetSampler::SetSampler(const ConvexSet& set, std::uint64_t seed)
    : set_(set), rng_(seed) {
  if (const auto* hs = std::get_if<Halfspaces>(&set.variant())) {
    state_ = dykstra_project(*hs, Vector::Zero(set.dim()), kTolProj);
    for (int i = 0; i < 20; ++i) sample_base();  // burn-in
  }
}

Vector SetSampler::sample_base() {
  return std::visit(
      [&](const auto& v) -> Vector {
        using T = std::decay_t<decltype(v)>;
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        if constexpr (std::is_same_v<T, Ball>) {
          return random_in_ball(v.center, v.radius, rng_);
        } else if constexpr (std::is_same_v<T, Box>) {
          Vector x(set_.dim());
          for (long i = 0; i < x.size(); ++i)
            x[i] = v.lower[i] + unif(rng_) * (v.upper[i] - v.lower[i]);
          return x;
        } else if constexpr (std::is_same_v<T, Halfspaces>) {
          // hit-and-run step
          Vector u = random_unit(set_.dim(), rng_);
          double tlo = -std::numeric_limits<double>::infinity();
          double thi = std::numeric_limits<double>::infinity();
          for (const auto& f : v.faces) {
            double au = f.normal.dot(u);
            double slack = f.offset - f.normal.dot(state_);
            if (au > 1e-14)
              thi = std::min(thi, slack / au);
            else if (au < -1e-14)
              tlo = std::max(tlo, slack / au);
          }
          if (!(tlo <= thi)) return state_;  // degenerate chord, stay
          state_ = state_ + (tlo + unif(rng_) * (thi - tlo)) * u;
          return state_;
        } else {
          if (!v.interior_point)
            throw NoInteriorPoint("sampling a LevelSet needs an interior point");
          const Vector& c = *v.interior_point;
          Vector u = random_unit(set_.dim(), rng_);
          double mu = minkowski_gauge(set_, c + u, c);
          double rmax = 1.0 / mu;
          double s = std::pow(unif(rng_), 1.0 / static_cast<double>(set_.dim()));
          return c + s * rmax * u;
        }
      },
      set_.variant());
}

Vector SetSampler::sample() {
  Vector b = sample_base();
  if (set_.pad() > 0.0)
    b += random_in_ball(Vector::Zero(set_.dim()), set_.pad(), rng_);
  return b;
}

Vector SetSampler::sample_expanded(double eps) {
  Vector b = sample_base();
  return b + random_in_ball(Vector::Zero(set_.dim()), set_.pad() + eps, rng_);
}

Vector SetSampler::sample_expanded_boundary_biased(double eps) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector b = sample_base();
  double r = set_.pad() + eps;
  if (unif(rng_) < 0.5)
    return b + r * (0.99 + 0.01 * unif(rng_)) * random_unit(set_.dim(), rng_);
  return b + random_in_ball(Vector::Zero(set_.dim()), r, rng_);
}

}  // namespace visharp
