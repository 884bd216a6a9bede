#include "visharp/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace visharp {

namespace fs = std::filesystem;

std::string resolve_output_path(const std::string& configured) {
  const char* dir = std::getenv(kOutputDirEnv);
  if (!dir || !*dir) return configured;
  fs::create_directories(dir);
  return (fs::path(dir) / fs::path(configured).filename()).string();
}

namespace {

void apply_overrides(RunConfig& cfg, const RunOverrides& ov) {
  if (ov.seed) cfg.solver.seed = *ov.seed;
  if (ov.max_iters) cfg.solver.max_iters = *ov.max_iters;
}

std::optional<OracleCertificate> maybe_oracle(const RunConfig& cfg,
                                              const Problem& problem,
                                              std::ostream& log, bool quiet) {
  if (!cfg.oracle.enabled) return std::nullopt;
  OracleCertificate cert;
  if (cfg.oracle.kind == "grid")
    cert = oracle_grid(problem, problem.set.dim() == 1 ? 1000000 : 100000);
  else if (cfg.oracle.kind == "extragradient")
    cert = oracle_extragradient(problem, 0.0, cfg.oracle.tolerance);
  else {
    if (!problem.op.known_solution)
      throw ConfigInvalid("[oracle] kind: analytic oracle needs a known solution");
    cert.x_star = *problem.op.known_solution;
    cert.method = OracleKind::Analytic;
    cert.residual =
        (cert.x_star - project(problem.set, cert.x_star - problem.op(cert.x_star)))
            .norm();
  }
  cert.gap_samples = 10000;
  if (!quiet)
    log << "oracle: x_star residual " << cert.residual << " ("
        << oracle_kind_name(cert.method) << ")\n";
  return cert;
}

}  // namespace

void write_summary(std::ostream& out, const RunConfig& cfg,
                   const SolveResult& result,
                   const std::optional<OracleCertificate>& cert) {
  out.precision(17);
  out << "schema = vi-sharp-summary/1\n";
  out << "best =";
  for (long i = 0; i < result.best.size(); ++i) out << " " << result.best[i];
  out << "\n";
  out << "best_iter = " << result.best_iter << "\n";
  out << "best_residual = " << result.best_residual << "\n";
  out << "certified_eps = " << result.certified_eps << "\n";
  out << "restarts = " << result.restarts << "\n";
  out << "iters_run = " << result.iters_run << "\n";
  out << "lambda = " << result.lambda << "\n";
  out << "lambda_eps = " << result.lambda_eps << "\n";
  out << "m_hat = " << result.m_hat << "\n";
  out << "schedule = " << schedule_name(result.config.schedule.kind) << "\n";
  if (result.config.schedule.experimental())
    out << "experimental = convergence not guaranteed by the diminishing-step "
           "theorem\n";
  if (cert) {
    out << "oracle_method = " << oracle_kind_name(cert->method) << "\n";
    out << "oracle_residual = " << cert->residual << "\n";
    out << "oracle_distance = " << (result.best - cert->x_star).norm() << "\n";
  }
  out << kSummaryConfigMarker << "\n";
  out << serialize_config(cfg);
}

RunConfig config_from_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open summary file: " + path);
  std::string line;
  while (std::getline(in, line))
    if (line == kSummaryConfigMarker) break;
  std::stringstream rest;
  rest << in.rdbuf();
  return parse_config_string(rest.str());
}

int run_command(const std::string& config_path, const RunOverrides& ov,
                std::ostream& log) {
  RunConfig cfg;
  std::optional<Problem> problem;
  try {
    cfg = parse_config_file(config_path);
    apply_overrides(cfg, ov);
    problem.emplace(build_problem(cfg));
    cfg.solver.validate(*problem);
  } catch (const ConfigInvalid& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    auto cert = maybe_oracle(cfg, *problem, log, ov.quiet);
    SolveResult result = solve(*problem, cfg.solver, build_penalty(cfg));
    std::string trace_path = resolve_output_path(cfg.output.trace_path);
    std::string summary_path = resolve_output_path(cfg.output.summary_path);
    write_trace_csv(trace_path, result);
    std::ofstream sum(summary_path);
    if (!sum) throw Error("cannot open summary file: " + summary_path);
    write_summary(sum, cfg, result, cert);
    if (!ov.quiet) {
      log << "run: " << result.iters_run << " iters, " << result.restarts
          << " restarts, certified_eps " << result.certified_eps << "\n";
      log << "wrote " << trace_path << " and " << summary_path << "\n";
    }
    return kExitOk;
  } catch (const NonFiniteIterate& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NonFiniteOperatorValue& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int sweep_command(const std::string& config_path, const std::string& parameter,
                  const std::vector<double>& values, const RunOverrides& ov,
                  std::ostream& log) {
  RunConfig base;
  try {
    base = parse_config_file(config_path);
    apply_overrides(base, ov);
    if (parameter != "theta0" && parameter != "power" && parameter != "ratio" &&
        parameter != "lambda" && parameter != "epsilon")
      throw ConfigInvalid("sweep parameter must be one of theta0, power, "
                          "ratio, lambda, epsilon; got " + parameter);
    if (values.empty()) throw ConfigInvalid("sweep needs at least one value");
  } catch (const Error& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  std::string out_path = resolve_output_path("sweep.csv");
  std::ofstream out(out_path);
  if (!out) {
    log << "error: cannot open " << out_path << "\n";
    return kExitNumerical;
  }
  out << "value,iters,restarts,certified_eps,best_residual\n";
  out.precision(17);
  for (double v : values) {
    RunConfig cfg = base;
    if (parameter == "theta0") cfg.solver.schedule.theta0 = v;
    else if (parameter == "power") cfg.solver.schedule.power = v;
    else if (parameter == "ratio") cfg.solver.schedule.ratio = v;
    else if (parameter == "lambda") cfg.solver.lambda = v;
    else cfg.solver.epsilon = v;
    try {
      Problem problem = build_problem(cfg);
      SolveResult res = solve(problem, cfg.solver, build_penalty(cfg));
      out << v << "," << res.iters_run << "," << res.restarts << ","
          << res.certified_eps << "," << res.best_residual << "\n";
    } catch (const ConfigInvalid& e) {
      log << "config error at value " << v << ": " << e.what() << "\n";
      return kExitConfig;
    } catch (const Error& e) {
      log << "numerical failure at value " << v << ": " << e.what() << "\n";
      return kExitNumerical;
    }
  }
  if (base.solver.schedule.experimental())
    log << "note: experimental schedule, convergence not guaranteed\n";
  if (!ov.quiet) log << "wrote " << out_path << "\n";
  return kExitOk;
}

int oracle_command(const std::string& config_path, const RunOverrides& ov,
                   std::ostream& log) {
  try {
    RunConfig cfg = parse_config_file(config_path);
    apply_overrides(cfg, ov);
    Problem problem = build_problem(cfg);
    OracleKind kind = cfg.oracle.kind == "grid" ? OracleKind::Grid
                      : cfg.oracle.kind == "analytic" ? OracleKind::Analytic
                                                      : OracleKind::Extragradient;
    std::string cache = resolve_output_path("certificates");
    std::string name = cfg.problem.kind == "builtin" ? cfg.problem.name
                                                     : cfg.problem.kind;
    OracleCertificate cert = mint_certificate(problem, name, kind, cache);
    if (!ov.quiet)
      log << "certificate: residual " << cert.residual << ", cached under "
          << cache << "\n";
    return kExitOk;
  } catch (const ConfigInvalid& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace visharp
