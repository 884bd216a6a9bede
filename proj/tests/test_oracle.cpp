#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "visharp/oracle.hpp"

using namespace visharp;

namespace {

Vector v1(double a) {
  Vector v(1);
  v << a;
  return v;
}

Problem segment_problem(std::function<Vector(const Vector&)> f, bool monotone,
                        std::optional<Vector> x_star = {}) {
  Problem p{ViOperator{}, ConvexSet::box(v1(-1), v1(1))};
  p.op.dim = 1;
  p.op.eval = std::move(f);
  p.op.monotone = monotone;
  p.op.rho_f = 2.0;
  p.op.known_solution = std::move(x_star);
  return p;
}

}  // namespace

TEST_CASE("grid oracle: interior and boundary solutions on a segment") {
  // interior zero of F(x) = x - 0.3
  auto interior = segment_problem(
      [](const Vector& x) { return Vector(x.array() - 0.3); }, true);
  auto c1 = oracle_grid(interior, 100000);
  CHECK(std::abs(c1.x_star[0] - 0.3) < 1e-6);
  CHECK(c1.residual < 1e-6);

  // F(x) = x + 2 is positive on [-1,1]: solution pinned to the left end
  auto boundary = segment_problem(
      [](const Vector& x) { return Vector(x.array() + 2.0); }, true);
  auto c2 = oracle_grid(boundary, 100000);
  CHECK(std::abs(c2.x_star[0] - (-1.0)) < 1e-6);
  CHECK(certificate_accepted(boundary, c2));
}

TEST_CASE("grid oracle: fig1 solution and the dimension guard") {
  auto fig1 = builtin_problem("fig1");
  auto cert = oracle_grid(fig1, 1000000);
  CHECK(std::abs(cert.x_star[0]) < 1e-6);
  CHECK(cert.residual < 1e-6);

  Problem big{ViOperator{}, ConvexSet::box(Vector::Constant(4, -1.0),
                                           Vector::Constant(4, 1.0))};
  big.op.dim = 4;
  big.op.eval = [](const Vector& x) { return x; };
  CHECK_THROWS_AS(oracle_grid(big, 1000), DimensionTooLarge);
}

TEST_CASE("extragradient oracle") {
  auto p = segment_problem(
      [](const Vector& x) { return Vector(x.array() - 0.4); }, true, v1(0.4));
  auto cert = oracle_extragradient(p);
  CHECK(std::abs(cert.x_star[0] - 0.4) < 1e-7);
  CHECK(cert.residual <= 1e-8);

  auto affine = builtin_problem("affine");
  auto ca = oracle_extragradient(affine);
  CHECK(ca.residual <= 1e-8);
  CHECK((ca.x_star - *affine.op.known_solution).norm() < 1e-6);

  // fig1 is non-monotone by construction: the precondition must fire
  auto fig1 = builtin_problem("fig1");
  CHECK_THROWS_AS(oracle_extragradient(fig1), ConfigInvalid);
}

TEST_CASE("grid and extragradient oracles agree on the catalog") {
  for (const auto& name : builtin_problem_names()) {
    auto p = builtin_problem(name);
    if (!p.op.monotone || p.set.dim() > 3) continue;
    auto g = oracle_grid(p, p.set.dim() == 1 ? 1000000 : 100000);
    auto e = oracle_extragradient(p);
    CHECK((g.x_star - e.x_star).norm() <= 1e-4);
    CHECK(certificate_accepted(p, g));
    CHECK(certificate_accepted(p, e));
  }
}

TEST_CASE("verify_eps_solution") {
  auto p = segment_problem(
      [](const Vector& x) { return x; }, true, v1(0));
  OracleCertificate cert{v1(0), OracleKind::Analytic, 0.0, 10000};
  CHECK(verify_eps_solution(p, v1(0), 0.01, cert));
  CHECK(verify_eps_solution(p, v1(0.04), 0.05, cert));
  CHECK_FALSE(verify_eps_solution(p, v1(0.06), 0.05, cert));
  CHECK_THROWS_AS(verify_eps_solution(p, Vector::Zero(2), 0.05, cert),
                  DimensionMismatch);
}

TEST_CASE("certificate rejection") {
  auto p = segment_problem(
      [](const Vector& x) { return Vector(x.array() - 0.3); }, true);
  OracleCertificate far{v1(-0.9), OracleKind::Analytic, 0.0, 0};
  CHECK_FALSE(certificate_accepted(p, far));  // PVI gap check fails
  OracleCertificate sloppy{v1(0.3), OracleKind::Analytic, 1e-3, 0};
  CHECK_FALSE(certificate_accepted(p, sloppy));  // residual too large
}

TEST_CASE("certificate files: round trip and cache") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "visharp-test-certs";
  fs::remove_all(dir);

  auto p = builtin_problem("qp-grad");
  auto minted =
      mint_certificate(p, "qp-grad", OracleKind::Extragradient, dir.string());
  auto path = dir / "qp-grad.extragradient.cert";
  CHECK(fs::exists(path));

  auto loaded = read_certificate(path.string());
  CHECK(loaded.method == OracleKind::Extragradient);
  CHECK((loaded.x_star - minted.x_star).norm() < 1e-12);
  CHECK(loaded.residual == doctest::Approx(minted.residual));
  CHECK(loaded.gap_samples == minted.gap_samples);

  // second mint reads the cache instead of recomputing
  auto cached =
      mint_certificate(p, "qp-grad", OracleKind::Extragradient, dir.string());
  CHECK((cached.x_star - minted.x_star).norm() < 1e-12);
  fs::remove_all(dir);
}
