#pragma once

#include "visharp/operators.hpp"

namespace visharp {

enum class OracleKind { Grid, Extragradient, Analytic };

const char* oracle_kind_name(OracleKind k);

/// Ground-truth solution with its quality evidence: the natural residual
/// at x_star and a sampled check of the dual-form inequality
/// F(y).(y - x_star) >= 0 over the set.
struct OracleCertificate {
  Vector x_star;
  OracleKind method = OracleKind::Grid;
  double residual = 0.0;
  int gap_samples = 0;
};

/// A certificate is accepted when the residual is tiny and the sampled
/// dual-form inequality holds up to slack 1e-6.
bool certificate_accepted(const Problem& problem, const OracleCertificate& cert,
                          int gap_samples = 10000, double slack = 1e-6,
                          std::uint64_t seed = 555);

/// Exhaustive refining grid scan minimizing the natural residual.
/// `resolution` is the total point budget per sweep; the winning cell is
/// re-scanned until the spacing drops below 1e-9. Dim <= 3 only.
OracleCertificate oracle_grid(const Problem& problem, long resolution);

/// Two-projection extragradient iteration run to natural residual <= tol.
/// Step <= 0 means auto (0.9 / Lipschitz estimate). Requires a monotone
/// operator.
OracleCertificate oracle_extragradient(const Problem& problem,
                                       double step = 0.0, double tol = 1e-8,
                                       long max_iters = 2000000);

/// ||x - cert.x_star|| <= eps.
bool verify_eps_solution(const Problem& problem, const Vector& x, double eps,
                         const OracleCertificate& cert);

/// Certificate cache files (structured text). `mint` reads the cache when
/// present, otherwise computes with the requested kind and persists.
void write_certificate(const std::string& path, const std::string& problem_name,
                       const OracleCertificate& cert, std::uint64_t seed = 0);
OracleCertificate read_certificate(const std::string& path);
OracleCertificate mint_certificate(const Problem& problem,
                                   const std::string& problem_name,
                                   OracleKind kind,
                                   const std::string& cache_dir);

}  // namespace visharp
