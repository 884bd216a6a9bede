#include "visharp/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace visharp {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

using Section = std::map<std::string, std::string>;
using Tree = std::map<std::string, Section>;

Tree read_tree(std::istream& in) {
  Tree tree;
  std::string line, section;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid("config line is not 'key = value': " + line);
    tree[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return tree;
}

struct Reader {
  const Tree& tree;

  const std::string* find(const std::string& sec, const std::string& key) const {
    auto s = tree.find(sec);
    if (s == tree.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end() || k->second.empty()) return nullptr;
    return &k->second;
  }
  std::string where(const std::string& sec, const std::string& key) const {
    return (sec.empty() ? key : "[" + sec + "] " + key);
  }
  std::string str(const std::string& sec, const std::string& key,
                  const std::string& def) const {
    const auto* v = find(sec, key);
    return v ? *v : def;
  }
  double num(const std::string& sec, const std::string& key, double def) const {
    const auto* v = find(sec, key);
    if (!v) return def;
    try {
      return std::stod(*v);
    } catch (...) {
      throw ConfigInvalid(where(sec, key) + ": not a number: " + *v);
    }
  }
  double require_num(const std::string& sec, const std::string& key) const {
    if (!find(sec, key))
      throw ConfigInvalid(where(sec, key) + ": required field missing");
    return num(sec, key, 0.0);
  }
  long integer(const std::string& sec, const std::string& key, long def) const {
    double d = num(sec, key, static_cast<double>(def));
    return static_cast<long>(d);
  }
  bool boolean(const std::string& sec, const std::string& key, bool def) const {
    const auto* v = find(sec, key);
    if (!v) return def;
    if (*v == "true" || *v == "1") return true;
    if (*v == "false" || *v == "0") return false;
    throw ConfigInvalid(where(sec, key) + ": expected true/false");
  }
  std::optional<Vector> vec_opt(const std::string& sec,
                                const std::string& key) const {
    const auto* v = find(sec, key);
    if (!v) return std::nullopt;
    std::istringstream iss(*v);
    std::vector<double> xs;
    double d;
    while (iss >> d) xs.push_back(d);
    if (xs.empty() || !iss.eof())
      throw ConfigInvalid(where(sec, key) + ": expected a list of numbers");
    return Eigen::Map<Vector>(xs.data(), xs.size());
  }
  Vector vec(const std::string& sec, const std::string& key) const {
    auto v = vec_opt(sec, key);
    if (!v)
      throw ConfigInvalid(where(sec, key) + ": required field missing");
    return *v;
  }
  Matrix matrix(const std::string& sec, const std::string& key) const {
    const auto* v = find(sec, key);
    if (!v)
      throw ConfigInvalid(where(sec, key) + ": required field missing");
    std::vector<std::vector<double>> rows;
    std::istringstream byrow(*v);
    std::string row;
    while (std::getline(byrow, row, ';')) {
      std::istringstream iss(row);
      std::vector<double> xs;
      double d;
      while (iss >> d) xs.push_back(d);
      if (!xs.empty()) rows.push_back(std::move(xs));
    }
    if (rows.empty())
      throw ConfigInvalid(where(sec, key) + ": empty matrix");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size())
        throw ConfigInvalid(where(sec, key) + ": ragged matrix rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const Vector& v) {
  std::string s;
  for (long i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += fmt(v[i]);
  }
  return s;
}

std::string fmt(const Matrix& m) {
  std::string s;
  for (long i = 0; i < m.rows(); ++i) {
    if (i) s += " ; ";
    for (long j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += fmt(m(i, j));
    }
  }
  return s;
}

bool eq(const Vector& a, const Vector& b) {
  return a.size() == b.size() && a == b;
}
bool eq(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}
template <typename T>
bool eq_opt(const std::optional<T>& a, const std::optional<T>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  if constexpr (std::is_same_v<T, Vector>)
    return eq(*a, *b);
  else
    return *a == *b;
}

ScheduleKind schedule_from_string(const std::string& s) {
  if (s == "harmonic") return ScheduleKind::Harmonic;
  if (s == "geometric") return ScheduleKind::Geometric;
  if (s == "adaptive-least-norm") return ScheduleKind::AdaptiveLeastNorm;
  throw ConfigInvalid("[solver] schedule: unknown schedule: " + s);
}

PenaltyVariant penalty_from_string(const std::string& s) {
  if (s == "projection") return PenaltyVariant::Projection;
  if (s == "subgradient") return PenaltyVariant::Subgradient;
  if (s == "minkowski") return PenaltyVariant::Minkowski;
  throw ConfigInvalid("[penalty] method: unknown method: " + s);
}

const char* penalty_name(PenaltyVariant v) {
  switch (v) {
    case PenaltyVariant::Projection: return "projection";
    case PenaltyVariant::Subgradient: return "subgradient";
    default: return "minkowski";
  }
}

ConvexSet build_set(const SetSpec& spec) {
  if (spec.kind == "box") return ConvexSet::box(spec.lower, spec.upper);
  if (spec.kind == "ball") return ConvexSet::ball(spec.center, spec.radius);
  if (spec.kind == "halfspaces") {
    if (spec.faces.empty())
      throw ConfigInvalid("[set] faces: required for halfspaces");
    return ConvexSet::halfspaces(spec.faces, spec.faces.front().normal.size());
  }
  if (spec.kind == "levelset") {
    Vector c = spec.center;
    double r = spec.radius;
    ConstraintFunction h{
        [c, r](const Vector& x) { return (x - c).norm() - r; },
        [c](const Vector& x) -> Vector {
          Vector d = x - c;
          double n = d.norm();
          if (n == 0.0) return Vector::Zero(x.size());
          return d / n;
        },
        1.0};
    return ConvexSet::level_set(std::move(h), c.size(), c);
  }
  throw ConfigInvalid("[set] kind: unknown set kind: " + spec.kind);
}

}  // namespace

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  return a.kind == b.kind && a.name == b.name && a.dim == b.dim &&
         eq(a.matrix, b.matrix) && eq(a.vector, b.vector) &&
         a.monotone == b.monotone && eq_opt(a.x_star, b.x_star);
}
bool operator==(const SetSpec& a, const SetSpec& b) {
  if (!(a.kind == b.kind && eq(a.lower, b.lower) && eq(a.upper, b.upper) &&
        eq(a.center, b.center) && a.radius == b.radius &&
        a.faces.size() == b.faces.size()))
    return false;
  for (std::size_t i = 0; i < a.faces.size(); ++i)
    if (!eq(a.faces[i].normal, b.faces[i].normal) ||
        a.faces[i].offset != b.faces[i].offset)
      return false;
  return true;
}
bool operator==(const OutputSpec& a, const OutputSpec& b) {
  return a.trace_path == b.trace_path && a.summary_path == b.summary_path &&
         a.format == b.format;
}
bool operator==(const OracleSpec& a, const OracleSpec& b) {
  return a.enabled == b.enabled && a.kind == b.kind &&
         a.tolerance == b.tolerance;
}
bool operator==(const StepSchedule& a, const StepSchedule& b) {
  return a.kind == b.kind && a.theta0 == b.theta0 && a.power == b.power &&
         a.ratio == b.ratio && a.shrink == b.shrink && a.window == b.window;
}
bool operator==(const SolverConfig& a, const SolverConfig& b) {
  return a.epsilon == b.epsilon && eq_opt(a.lambda, b.lambda) &&
         a.rho_f == b.rho_f && eq_opt(a.restart_radius, b.restart_radius) &&
         a.schedule == b.schedule && a.max_iters == b.max_iters &&
         eq(a.x0, b.x0) && a.trace_every == b.trace_every &&
         a.seed == b.seed && eq_opt(a.stop_residual, b.stop_residual);
}
bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.schema == b.schema && a.problem == b.problem && a.set == b.set &&
         a.solver == b.solver && a.penalty_method == b.penalty_method &&
         eq_opt(a.penalty_interior, b.penalty_interior) &&
         a.output == b.output && a.oracle == b.oracle;
}

RunConfig parse_config(std::istream& in) {
  Tree tree = read_tree(in);
  Reader r{tree};
  RunConfig cfg;

  cfg.schema = r.str("", "schema", "vi-sharp/1");
  if (cfg.schema != "vi-sharp/1")
    throw ConfigInvalid("schema: unsupported config schema: " + cfg.schema);

  cfg.problem.kind = r.str("problem", "kind", "builtin");
  cfg.problem.name = r.str("problem", "name", "");
  if (cfg.problem.kind == "builtin") {
    if (cfg.problem.name.empty())
      throw ConfigInvalid("[problem] name: required for builtin problems");
  } else if (cfg.problem.kind == "affine" || cfg.problem.kind == "quadratic") {
    cfg.problem.matrix = r.matrix("problem", "matrix");
    cfg.problem.vector = r.vec("problem", "vector");
    cfg.problem.dim = cfg.problem.matrix.rows();
    if (cfg.problem.matrix.cols() != cfg.problem.dim ||
        cfg.problem.vector.size() != cfg.problem.dim)
      throw ConfigInvalid("[problem] matrix/vector: inconsistent dimensions");
    cfg.problem.monotone = r.boolean("problem", "monotone", true);
    cfg.problem.x_star = r.vec_opt("problem", "x_star");
  } else {
    throw ConfigInvalid("[problem] kind: unknown kind: " + cfg.problem.kind);
  }

  if (tree.count("set")) {
    cfg.set.kind = r.str("set", "kind", "box");
    if (cfg.set.kind == "box") {
      cfg.set.lower = r.vec("set", "lower");
      cfg.set.upper = r.vec("set", "upper");
    } else if (cfg.set.kind == "ball" || cfg.set.kind == "levelset") {
      cfg.set.center = r.vec("set", "center");
      cfg.set.radius = r.require_num("set", "radius");
    } else if (cfg.set.kind == "halfspaces") {
      Matrix rows = r.matrix("set", "faces");
      if (rows.cols() < 2)
        throw ConfigInvalid("[set] faces: each row is 'a_1 ... a_n b'");
      for (long i = 0; i < rows.rows(); ++i)
        cfg.set.faces.push_back(Halfspace{
            rows.row(i).head(rows.cols() - 1).transpose(),
            rows(i, rows.cols() - 1)});
    } else {
      throw ConfigInvalid("[set] kind: unknown set kind: " + cfg.set.kind);
    }
  } else if (cfg.problem.kind != "builtin") {
    throw ConfigInvalid("[set]: required for non-builtin problems");
  }

  cfg.solver.epsilon = r.num("solver", "epsilon", 0.05);
  std::string lam = r.str("solver", "lambda", "auto");
  if (lam != "auto") {
    try {
      cfg.solver.lambda = std::stod(lam);
    } catch (...) {
      throw ConfigInvalid("[solver] lambda: expected 'auto' or a number");
    }
  }
  cfg.solver.rho_f = r.require_num("solver", "rho_f");
  if (r.find("solver", "restart_radius"))
    cfg.solver.restart_radius = r.num("solver", "restart_radius", 0.0);
  cfg.solver.schedule.kind =
      schedule_from_string(r.str("solver", "schedule", "harmonic"));
  cfg.solver.schedule.theta0 = r.num("solver", "theta0", 0.5);
  cfg.solver.schedule.power = r.num("solver", "power", 1.0);
  cfg.solver.schedule.ratio = r.num("solver", "ratio", 0.9);
  cfg.solver.schedule.shrink = r.num("solver", "shrink", 0.5);
  cfg.solver.schedule.window =
      static_cast<int>(r.integer("solver", "window", 1000));
  cfg.solver.max_iters = r.integer("solver", "max_iters", 100000);
  cfg.solver.x0 = r.vec("solver", "x0");
  cfg.solver.trace_every = r.integer("solver", "trace_every", 1);
  cfg.solver.seed = static_cast<std::uint64_t>(r.integer("solver", "seed", 0));
  if (r.find("solver", "stop_residual"))
    cfg.solver.stop_residual = r.num("solver", "stop_residual", 0.0);

  cfg.penalty_method =
      penalty_from_string(r.str("penalty", "method", "projection"));
  cfg.penalty_interior = r.vec_opt("penalty", "interior_point");

  cfg.output.trace_path = r.str("output", "trace", "trace.csv");
  cfg.output.summary_path = r.str("output", "summary", "summary.txt");
  cfg.output.format = r.str("output", "format", "csv");
  if (cfg.output.format != "csv" && cfg.output.format != "structured-text")
    throw ConfigInvalid("[output] format: expected csv or structured-text");

  cfg.oracle.enabled = r.boolean("oracle", "enabled", false);
  cfg.oracle.kind = r.str("oracle", "kind", "extragradient");
  if (cfg.oracle.kind != "grid" && cfg.oracle.kind != "extragradient" &&
      cfg.oracle.kind != "analytic")
    throw ConfigInvalid("[oracle] kind: unknown oracle kind: " + cfg.oracle.kind);
  cfg.oracle.tolerance = r.num("oracle", "tolerance", 1e-8);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  return parse_config(in);
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string serialize_config(const RunConfig& cfg) {
  std::string s;
  s += "schema = " + cfg.schema + "\n\n[problem]\n";
  s += "kind = " + cfg.problem.kind + "\n";
  if (cfg.problem.kind == "builtin") {
    s += "name = " + cfg.problem.name + "\n";
  } else {
    s += "matrix = " + fmt(cfg.problem.matrix) + "\n";
    s += "vector = " + fmt(cfg.problem.vector) + "\n";
    s += std::string("monotone = ") + (cfg.problem.monotone ? "true" : "false") + "\n";
    if (cfg.problem.x_star) s += "x_star = " + fmt(*cfg.problem.x_star) + "\n";
  }
  if (cfg.problem.kind != "builtin") {
    s += "\n[set]\nkind = " + cfg.set.kind + "\n";
    if (cfg.set.kind == "box") {
      s += "lower = " + fmt(cfg.set.lower) + "\n";
      s += "upper = " + fmt(cfg.set.upper) + "\n";
    } else if (cfg.set.kind == "halfspaces") {
      s += "faces = ";
      for (std::size_t i = 0; i < cfg.set.faces.size(); ++i) {
        if (i) s += " ; ";
        s += fmt(cfg.set.faces[i].normal) + " " + fmt(cfg.set.faces[i].offset);
      }
      s += "\n";
    } else {
      s += "center = " + fmt(cfg.set.center) + "\n";
      s += "radius = " + fmt(cfg.set.radius) + "\n";
    }
  }
  const auto& sv = cfg.solver;
  s += "\n[solver]\n";
  s += "epsilon = " + fmt(sv.epsilon) + "\n";
  s += "lambda = " + (sv.lambda ? fmt(*sv.lambda) : std::string("auto")) + "\n";
  s += "rho_f = " + fmt(sv.rho_f) + "\n";
  if (sv.restart_radius)
    s += "restart_radius = " + fmt(*sv.restart_radius) + "\n";
  s += std::string("schedule = ") + schedule_name(sv.schedule.kind) + "\n";
  s += "theta0 = " + fmt(sv.schedule.theta0) + "\n";
  s += "power = " + fmt(sv.schedule.power) + "\n";
  s += "ratio = " + fmt(sv.schedule.ratio) + "\n";
  s += "shrink = " + fmt(sv.schedule.shrink) + "\n";
  s += "window = " + std::to_string(sv.schedule.window) + "\n";
  s += "max_iters = " + std::to_string(sv.max_iters) + "\n";
  s += "x0 = " + fmt(sv.x0) + "\n";
  s += "trace_every = " + std::to_string(sv.trace_every) + "\n";
  s += "seed = " + std::to_string(sv.seed) + "\n";
  if (sv.stop_residual) s += "stop_residual = " + fmt(*sv.stop_residual) + "\n";
  s += "\n[penalty]\n";
  s += std::string("method = ") + penalty_name(cfg.penalty_method) + "\n";
  if (cfg.penalty_interior)
    s += "interior_point = " + fmt(*cfg.penalty_interior) + "\n";
  s += "\n[output]\n";
  s += "trace = " + cfg.output.trace_path + "\n";
  s += "summary = " + cfg.output.summary_path + "\n";
  s += "format = " + cfg.output.format + "\n";
  s += "\n[oracle]\n";
  s += std::string("enabled = ") + (cfg.oracle.enabled ? "true" : "false") + "\n";
  s += "kind = " + cfg.oracle.kind + "\n";
  s += "tolerance = " + fmt(cfg.oracle.tolerance) + "\n";
  return s;
}

Problem build_problem(const RunConfig& cfg) {
  if (cfg.problem.kind == "builtin") return builtin_problem(cfg.problem.name);
  ViOperator op;
  op.dim = cfg.problem.dim;
  op.monotone = cfg.problem.monotone;
  op.rho_f = cfg.solver.rho_f;
  op.known_solution = cfg.problem.x_star;
  op.name = cfg.problem.kind;
  Matrix m = cfg.problem.matrix;
  Vector v = cfg.problem.vector;
  if (cfg.problem.kind == "affine")
    op.eval = [m, v](const Vector& x) { return Vector(m * x + v); };
  else  // quadratic-gradient
    op.eval = [m, v](const Vector& x) { return Vector(m * (x - v)); };
  ConvexSet set = build_set(cfg.set);
  if (set.dim() != op.dim)
    throw ConfigInvalid("[set]: dimension does not match the operator");
  return Problem{std::move(op), std::move(set)};
}

PenaltyMethod build_penalty(const RunConfig& cfg) {
  return PenaltyMethod{cfg.penalty_method, cfg.solver.epsilon,
                       cfg.penalty_interior};
}

}  // namespace visharp
