#pragma once

#include "visharp/config.hpp"
#include "visharp/oracle.hpp"

namespace visharp {

/// Command-line overrides applied on top of a parsed config.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> max_iters;
  bool quiet = false;
};

/// Name of the environment variable that redirects all output files.
inline constexpr const char* kOutputDirEnv = "VI_SHARP_OUT_DIR";

/// Resolve an output path against VI_SHARP_OUT_DIR when it is set.
std::string resolve_output_path(const std::string& configured);

/// Exit codes of the CLI: 0 completed, 2 config error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Full run: optional oracle, solve, trace CSV + summary files.
/// Reports errors on `log` and returns an exit code; never throws.
int run_command(const std::string& config_path, const RunOverrides& ov,
                std::ostream& log);

/// One solve per value of the swept parameter
/// (theta0 | power | ratio | lambda | epsilon); writes sweep.csv.
int sweep_command(const std::string& config_path, const std::string& parameter,
                  const std::vector<double>& values, const RunOverrides& ov,
                  std::ostream& log);

/// Mint and persist the oracle certificate configured in [oracle].
int oracle_command(const std::string& config_path, const RunOverrides& ov,
                   std::ostream& log);

/// Summary document: result keys, then the canonical config after a
/// marker line so the exact run is reproducible from the summary alone.
void write_summary(std::ostream& out, const RunConfig& cfg,
                   const SolveResult& result,
                   const std::optional<OracleCertificate>& cert);
inline constexpr const char* kSummaryConfigMarker = "--- config ---";

/// Re-parse the config recorded in a summary file.
RunConfig config_from_summary(const std::string& path);

}  // namespace visharp
