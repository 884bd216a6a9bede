#include "visharp/oracle.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace visharp {

namespace {

double natural_residual(const Problem& p, const Vector& x) {
  return (x - project(p.set, x - p.op(x))).norm();
}

// Axis-aligned bounding box of the set, closed form where possible,
// sampled otherwise.
std::pair<Vector, Vector> bounding_box(const ConvexSet& set) {
  if (const auto* b = std::get_if<Ball>(&set.variant())) {
    Vector r = Vector::Constant(set.dim(), b->radius);
    return {b->center - r, b->center + r};
  }
  if (const auto* bx = std::get_if<Box>(&set.variant())) {
    Vector pad = Vector::Constant(set.dim(), set.pad());
    return {bx->lower - pad, bx->upper + pad};
  }
  SetSampler sampler(set, 4321);
  Vector lo = Vector::Constant(set.dim(), std::numeric_limits<double>::infinity());
  Vector hi = -lo;
  for (int i = 0; i < 4000; ++i) {
    Vector y = sampler.sample();
    lo = lo.cwiseMin(y);
    hi = hi.cwiseMax(y);
  }
  Vector margin = 0.05 * (hi - lo);
  return {lo - margin, hi + margin};
}

}  // namespace

const char* oracle_kind_name(OracleKind k) {
  switch (k) {
    case OracleKind::Grid: return "grid";
    case OracleKind::Extragradient: return "extragradient";
    default: return "analytic";
  }
}

bool certificate_accepted(const Problem& problem, const OracleCertificate& cert,
                          int gap_samples, double slack, std::uint64_t seed) {
  if (!(cert.residual <= 1e-6)) return false;
  SetSampler sampler(problem.set, seed);
  for (int i = 0; i < gap_samples; ++i) {
    Vector y = sampler.sample();
    if (problem.op(y).dot(y - cert.x_star) < -slack) return false;
  }
  return true;
}

OracleCertificate oracle_grid(const Problem& problem, long resolution) {
  const long dim = problem.set.dim();
  if (dim > 3) throw DimensionTooLarge("grid oracle supports dim <= 3 only");
  ConstraintFunction feas = constraint_function(problem.set);
  auto [lo, hi] = bounding_box(problem.set);

  long n = std::max<long>(
      3, static_cast<long>(std::round(
             std::pow(static_cast<double>(resolution), 1.0 / dim))));

  Vector best = project(problem.set, 0.5 * (lo + hi));
  double best_r = natural_residual(problem, best);
  for (int level = 0; level < 80; ++level) {
    Vector spacing = (hi - lo) / static_cast<double>(n - 1);
    std::vector<long> idx(dim, 0);
    while (true) {
      Vector x(dim);
      for (long i = 0; i < dim; ++i) x[i] = lo[i] + idx[i] * spacing[i];
      if (feas.value(x) <= 1e-12) {
        double r = natural_residual(problem, x);
        if (r < best_r) {
          best_r = r;
          best = x;
        }
      }
      long i = 0;
      for (; i < dim; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == dim) break;
    }
    if (spacing.maxCoeff() < 1e-9) break;
    // zoom onto the winning cell
    Vector half = 1.5 * spacing;
    lo = (best - half).cwiseMax(lo);
    hi = (best + half).cwiseMin(hi);
  }
  return OracleCertificate{best, OracleKind::Grid, best_r, 0};
}

OracleCertificate oracle_extragradient(const Problem& problem, double step,
                                       double tol, long max_iters) {
  const ViOperator& op = problem.op;
  if (!op.monotone)
    throw ConfigInvalid("extragradient oracle requires a monotone operator");
  SetSampler sampler(problem.set, 777);
  // sampled monotonicity audit and Lipschitz estimate
  double lip = 0.0;
  for (int i = 0; i < 200; ++i) {
    Vector a = sampler.sample(), b = sampler.sample();
    double dn = (a - b).norm();
    if (dn < 1e-12) continue;
    Vector df = op(a) - op(b);
    if (df.dot(a - b) < -1e-8 * dn)
      throw ConfigInvalid("operator failed the sampled monotonicity check");
    lip = std::max(lip, df.norm() / dn);
  }
  if (step <= 0.0) step = lip > 0.0 ? 0.9 / lip : 1.0;

  Vector x = interior_point(problem.set)
                 ? *interior_point(problem.set)
                 : project(problem.set, Vector::Zero(problem.set.dim()));
  for (long k = 0; k < max_iters; ++k) {
    double r = natural_residual(problem, x);
    if (r <= tol)
      return OracleCertificate{x, OracleKind::Extragradient, r, 0};
    Vector y = project(problem.set, x - step * op(x));
    x = project(problem.set, x - step * op(y));
  }
  throw DidNotConverge("extragradient oracle did not reach tolerance");
}

bool verify_eps_solution(const Problem& problem, const Vector& x, double eps,
                         const OracleCertificate& cert) {
  check_dim(problem.set.dim(), x);
  return (x - cert.x_star).norm() <= eps;
}

void write_certificate(const std::string& path, const std::string& problem_name,
                       const OracleCertificate& cert, std::uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open certificate file: " + path);
  out << "schema = visharp-certificate/1\n";
  out << "problem = " << problem_name << "\n";
  out << "method = " << oracle_kind_name(cert.method) << "\n";
  out.precision(17);
  out << "residual = " << cert.residual << "\n";
  out << "gap_samples = " << cert.gap_samples << "\n";
  out << "seed = " << seed << "\n";
  out << "version = " << "vi-sharp/1" << "\n";
  out << "x_star =";
  for (long i = 0; i < cert.x_star.size(); ++i) out << " " << cert.x_star[i];
  out << "\n";
}

OracleCertificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open certificate file: " + path);
  OracleCertificate cert;
  std::string line;
  bool have_x = false;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string val = line.substr(eq + 1);
    if (key == "method") {
      if (val.find("grid") != std::string::npos) cert.method = OracleKind::Grid;
      else if (val.find("extragradient") != std::string::npos)
        cert.method = OracleKind::Extragradient;
      else cert.method = OracleKind::Analytic;
    } else if (key == "residual") {
      cert.residual = std::stod(val);
    } else if (key == "gap_samples") {
      cert.gap_samples = std::stoi(val);
    } else if (key == "x_star") {
      std::istringstream iss(val);
      std::vector<double> xs;
      double v;
      while (iss >> v) xs.push_back(v);
      cert.x_star = Eigen::Map<Vector>(xs.data(), xs.size());
      have_x = true;
    }
  }
  if (!have_x) throw Error("certificate file missing x_star: " + path);
  return cert;
}

OracleCertificate mint_certificate(const Problem& problem,
                                   const std::string& problem_name,
                                   OracleKind kind,
                                   const std::string& cache_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(cache_dir);
  std::string path = (fs::path(cache_dir) /
                      (problem_name + "." + oracle_kind_name(kind) + ".cert"))
                         .string();
  if (fs::exists(path)) return read_certificate(path);
  OracleCertificate cert;
  switch (kind) {
    case OracleKind::Grid:
      cert = oracle_grid(problem, problem.set.dim() == 1 ? 1000000 : 100000);
      break;
    case OracleKind::Extragradient:
      cert = oracle_extragradient(problem);
      break;
    default:
      if (!problem.op.known_solution)
        throw Error("no analytic solution recorded for " + problem_name);
      cert = OracleCertificate{*problem.op.known_solution, OracleKind::Analytic,
                               natural_residual(problem, *problem.op.known_solution),
                               0};
      break;
  }
  cert.gap_samples = 10000;
  if (!certificate_accepted(problem, cert, cert.gap_samples))
    throw DidNotConverge("oracle certificate rejected for " + problem_name);
  write_certificate(path, problem_name, cert);
  return cert;
}

}  // namespace visharp
