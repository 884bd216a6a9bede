#pragma once

#include <iosfwd>
#include <map>

#include "visharp/solver.hpp"

namespace visharp {

/// Problem description from a config file: a catalog name or an inline
/// affine (F = Ax + b) / quadratic-gradient (F = Q(x - a)) operator.
struct ProblemSpec {
  std::string kind = "builtin";  // builtin | affine | quadratic
  std::string name = "fig1";
  long dim = 0;
  Matrix matrix;   // affine A or quadratic Q
  Vector vector;   // affine b or quadratic center a
  bool monotone = true;
  std::optional<Vector> x_star;
};

/// Feasible set for inline problems. `levelset` is the ball gauge
/// h(x) = ||x - center|| - radius with Lipschitz bound 1.
struct SetSpec {
  std::string kind = "box";  // box | ball | halfspaces | levelset
  Vector lower, upper;
  Vector center;
  double radius = 1.0;
  std::vector<Halfspace> faces;
};

struct OutputSpec {
  std::string trace_path = "trace.csv";
  std::string summary_path = "summary.txt";
  std::string format = "csv";
};

struct OracleSpec {
  bool enabled = false;
  std::string kind = "extragradient";  // grid | extragradient | analytic
  double tolerance = 1e-8;
};

struct RunConfig {
  std::string schema = "vi-sharp/1";
  ProblemSpec problem;
  SetSpec set;
  SolverConfig solver;
  PenaltyVariant penalty_method = PenaltyVariant::Projection;
  std::optional<Vector> penalty_interior;
  OutputSpec output;
  OracleSpec oracle;
};

bool operator==(const ProblemSpec&, const ProblemSpec&);
bool operator==(const SetSpec&, const SetSpec&);
bool operator==(const OutputSpec&, const OutputSpec&);
bool operator==(const OracleSpec&, const OracleSpec&);
bool operator==(const StepSchedule&, const StepSchedule&);
bool operator==(const SolverConfig&, const SolverConfig&);
bool operator==(const RunConfig&, const RunConfig&);

/// Key-value config with [section] headers. Throws ConfigInvalid with the
/// offending field in the message.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_string(const std::string& text);

/// Canonical serialization; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& cfg);

Problem build_problem(const RunConfig& cfg);
PenaltyMethod build_penalty(const RunConfig& cfg);

}  // namespace visharp
