#include <doctest.h>

#include "visharp/geometry.hpp"

using namespace visharp;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

ConvexSet unit_square() { return ConvexSet::box(v2(0, 0), v2(1, 1)); }

// x1 + x2 <= 1, x >= 0
ConvexSet simplex2() {
  std::vector<Halfspace> faces;
  faces.push_back({v2(1, 1), 1.0});
  faces.push_back({v2(-1, 0), 0.0});
  faces.push_back({v2(0, -1), 0.0});
  return ConvexSet::halfspaces(faces, 2);
}

// Independent oracle: dense grid over the simplex minimizing ||x - y||.
Vector simplex_projection_grid(const Vector& x, int n) {
  Vector best = v2(0, 0);
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      Vector y = v2(double(i) / n, double(j) / n);
      double d = (x - y).norm();
      if (d < best_d) {
        best_d = d;
        best = y;
      }
    }
  }
  return best;
}

ConvexSet max_norm_levelset() {
  ConstraintFunction h{
      [](const Vector& x) { return x.cwiseAbs().maxCoeff() - 1.0; },
      [](const Vector& x) -> Vector {
        long i;
        x.cwiseAbs().maxCoeff(&i);
        Vector g = Vector::Zero(x.size());
        g[i] = x[i] >= 0 ? 1.0 : -1.0;
        return g;
      },
      1.0};
  return ConvexSet::level_set(std::move(h), 2, Vector::Zero(2));
}

}  // namespace

TEST_CASE("project: closed forms") {
  auto ball = ConvexSet::ball(Vector::Zero(2), 1.0);
  CHECK((project(ball, v2(2, 0)) - v2(1, 0)).norm() == doctest::Approx(0.0));
  auto box = unit_square();
  CHECK((project(box, v2(2, 0.5)) - v2(1, 0.5)).norm() == doctest::Approx(0.0));
  CHECK((project(box, v2(0.3, 0.4)) - v2(0.3, 0.4)).norm() == 0.0);
}

TEST_CASE("project: halfspace simplex matches the grid oracle") {
  auto s = simplex2();
  Vector x = v2(1, 1);
  Vector y = project(s, x);
  CHECK((y - v2(0.5, 0.5)).norm() < 1e-8);
  Vector g = simplex_projection_grid(x, 400);
  CHECK((y - g).norm() < 2.0 / 400);
}

TEST_CASE("project: level set uses the interior ray") {
  auto ls = max_norm_levelset();
  Vector y = project(ls, v2(3, 0));
  CHECK((y - v2(1, 0)).norm() < 1e-8);
  CHECK_THROWS_AS(
      project(ConvexSet::level_set(constraint_function(unit_square()), 2),
              v2(5, 5)),
      NoInteriorPoint);
}

TEST_CASE("distance") {
  auto ball = ConvexSet::ball(Vector::Zero(2), 1.0);
  CHECK(distance(ball, v2(3, 0)) == doctest::Approx(2.0));
  CHECK(distance(ball, v2(0.2, 0.1)) == 0.0);
  CHECK(distance(unit_square(), v2(2, 2)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("contains") {
  auto ball = ConvexSet::ball(Vector::Zero(2), 1.0);
  CHECK(contains(ball, v2(0, 0), 0.0));
  CHECK_FALSE(contains(ball, v2(1.5, 0), 0.0));
  CHECK(contains(ball, v2(1 + 1e-12, 0), 1e-9));
  CHECK_THROWS_AS(contains(ball, Vector::Zero(3)), DimensionMismatch);
}

TEST_CASE("minkowski gauge") {
  auto ball = ConvexSet::ball(Vector::Zero(2), 1.0);
  CHECK(minkowski_gauge(ball, v2(3, 0), Vector::Zero(2)) ==
        doctest::Approx(3.0).epsilon(1e-8));
  auto box = ConvexSet::box(v2(-1, -1), v2(1, 1));
  CHECK(minkowski_gauge(box, v2(0.5, 0), Vector::Zero(2)) ==
        doctest::Approx(0.5).epsilon(1e-8));
  CHECK_THROWS_AS(minkowski_gauge(ball, v2(2, 0), v2(3, 0)),
                  CenterNotInterior);
}

TEST_CASE("minkowski gauge off-center: bisection oracle on the ray") {
  // center (0.5, 0), x = (2, 0): the scaled-back point center + (x-center)/mu
  // must land on the sphere. An independent 1-D bisection on
  // |0.5 + 1.5/mu| = 1 gives mu = 3 with boundary point (1, 0).
  auto ball = ConvexSet::ball(Vector::Zero(2), 1.0);
  Vector c = v2(0.5, 0);
  double lo = 1.0, hi = 16.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    ((0.5 + 1.5 / mid) <= 1.0 ? hi : lo) = mid;
  }
  double oracle = 0.5 * (lo + hi);
  CHECK(oracle == doctest::Approx(3.0).epsilon(1e-10));
  double mu = minkowski_gauge(ball, v2(2, 0), c);
  CHECK(mu == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(((c + (v2(2, 0) - c) / mu) - v2(1, 0)).norm() < 1e-8);
}

TEST_CASE("expand") {
  auto ball = expand(ConvexSet::ball(Vector::Zero(2), 1.0), 0.5);
  CHECK(distance(ball, v2(1.4, 0)) == 0.0);
  CHECK(distance(ball, v2(2, 0)) == doctest::Approx(0.5));
  CHECK(distance(expand(unit_square(), 0.5), v2(2, 0.5)) ==
        doctest::Approx(0.5));
  auto ls = expand(ConvexSet::level_set(
                       ConstraintFunction{
                           [](const Vector& x) { return x.norm() - 1.0; },
                           [](const Vector& x) -> Vector { return x / x.norm(); },
                           1.0},
                       2, Vector::Zero(2)),
                   0.1);
  CHECK(contains(ls, v2(1.05, 0), 0.0));
  CHECK_FALSE(contains(ls, v2(1.2, 0), 0.0));
  CHECK_THROWS_AS(
      expand(ConvexSet::level_set(
                 ConstraintFunction{[](const Vector& x) { return x.norm() - 1.0; },
                                    [](const Vector& x) -> Vector { return x; },
                                    std::nullopt},
                 2, Vector::Zero(2)),
             0.1),
      MissingLipschitzBound);
}

TEST_CASE("halfspaces: unbounded sets are rejected") {
  std::vector<Halfspace> faces;
  faces.push_back({v2(1, 0), 1.0});  // only x1 <= 1: unbounded
  CHECK_THROWS_AS(ConvexSet::halfspaces(faces, 2), UnboundedSet);
}

TEST_CASE("projection properties: idempotence, nonexpansiveness, obtuse angle") {
  Rng rng(42);
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet::ball(v2(0.3, -0.2), 0.8));
  sets.push_back(ConvexSet::box(v2(-1, 0), v2(2, 1)));
  sets.push_back(simplex2());
  for (const auto& set : sets) {
    SetSampler inner(set, 7);
    for (int i = 0; i < 300; ++i) {
      Vector x = random_in_ball(Vector::Zero(2), 3.0, rng);
      Vector y = random_in_ball(Vector::Zero(2), 3.0, rng);
      Vector px = project(set, x);
      Vector py = project(set, y);
      CHECK((project(set, px) - px).norm() < 1e-8);
      CHECK((px - py).norm() <= (x - y).norm() + 1e-10);
      Vector z = inner.sample();
      CHECK((x - px).dot(z - px) < 1e-8);
    }
  }
}

TEST_CASE("gauge homogeneity") {
  Rng rng(11);
  auto set = ConvexSet::ball(v2(0.1, 0.2), 1.3);
  Vector c = v2(0.1, 0.2);
  for (int i = 0; i < 200; ++i) {
    Vector x = random_in_ball(c, 3.0, rng);
    if ((x - c).norm() < 1e-6) continue;
    double t = 0.25 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    double lhs = minkowski_gauge(set, c + t * (x - c), c);
    double rhs = t * minkowski_gauge(set, x, c);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
  }
}

TEST_CASE("expansion distance identity for Ball and Box") {
  Rng rng(5);
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet::ball(v2(0.2, 0), 0.7));
  sets.push_back(ConvexSet::box(v2(-1, -1), v2(0.5, 2)));
  for (const auto& set : sets) {
    auto wide = expand(set, 0.4);
    for (int i = 0; i < 500; ++i) {
      Vector x = random_in_ball(Vector::Zero(2), 4.0, rng);
      double expect = std::max(0.0, distance(set, x) - 0.4);
      CHECK(distance(wide, x) == doctest::Approx(expect).epsilon(1e-8));
    }
  }
}

TEST_CASE("samplers stay inside their sets") {
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet::ball(v2(1, 1), 0.5));
  sets.push_back(simplex2());
  sets.push_back(max_norm_levelset());
  for (const auto& set : sets) {
    SetSampler sampler(set, 99);
    for (int i = 0; i < 200; ++i)
      CHECK(contains(set, sampler.sample(), 1e-7));
    for (int i = 0; i < 200; ++i) {
      Vector y = sampler.sample_expanded(0.3);
      CHECK(distance(set, y) <= 0.3 + 1e-7);
    }
  }
}
