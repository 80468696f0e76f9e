#include "hyperkin/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hyperkin/error.hpp"

namespace hyperkin {

namespace {

constexpr double kPi = std::numbers::pi;

Scenario make(std::string name, std::string description, int m, bool euclid,
              std::vector<std::tuple<int, int, const char*>> metric,
              std::vector<const char*> components,
              std::vector<std::array<double, 2>> domain,
              std::vector<const char*> exclusions, double t0) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.motion.m = m;
  if (euclid) {
    s.motion.ambient = AmbientSpec::make_euclidean(m + 1);
  } else {
    std::vector<std::tuple<int, int, expr::ExprPtr>> entries;
    for (const auto& [i, j, src] : metric) entries.emplace_back(i, j, expr::parse(src));
    s.motion.ambient = AmbientSpec::make_metric(m + 1, entries);
  }
  for (const char* c : components) s.motion.components.push_back(expr::parse(c));
  s.motion.domain = std::move(domain);
  for (const char* e : exclusions) s.motion.exclusions.push_back(expr::parse(e));
  s.grid.t0 = t0;
  validate_motion(s.motion);
  return s;
}

std::vector<Scenario> build_catalog() {
  std::vector<Scenario> cat;

  cat.push_back(make(
      "balloon", "sphere of radius t inflated from the south pole chart; uniform stretch",
      2, true, {},
      {"t*cos(u)*sin(2*v)", "t*sin(u)*sin(2*v)", "2*t*sin(v)^2"},
      {{{0.0, 2.0 * kPi}}, {{0.0, 0.5 * kPi}}}, {"sin(2*v)"}, 1.0));

  cat.push_back(make(
      "cylinder-unroll", "cylinder of radius t unrolling while the ruling stretches by t",
      2, true, {},
      {"t*v", "t*sin(2*u/t)", "2*t*sin(u/t)^2"},
      {{{0.0, kPi}}, {{-1.0, 1.0}}}, {}, 1.0));

  cat.push_back(make(
      "parallel-sphere", "unit sphere offset along its normal at unit speed",
      2, true, {},
      {"t*cos(u)*sin(v)", "t*sin(u)*sin(v)", "t*cos(v)"},
      {{{0.0, 2.0 * kPi}}, {{0.0, kPi}}}, {"sin(v)"}, 1.0));

  cat.push_back(make(
      "parallel-ellipsoid", "ellipsoid (1, 1, 0.8) offset along its unit normal",
      2, true, {},
      {"cos(u)*sin(v) + (t - 1)*cos(u)*sin(v)/sqrt(sin(v)^2 + 1.5625*cos(v)^2)",
       "sin(u)*sin(v) + (t - 1)*sin(u)*sin(v)/sqrt(sin(v)^2 + 1.5625*cos(v)^2)",
       "0.8*cos(v) + (t - 1)*1.25*cos(v)/sqrt(sin(v)^2 + 1.5625*cos(v)^2)"},
      {{{0.0, 2.0 * kPi}}, {{0.0, kPi}}}, {"sin(v)"}, 1.0));

  cat.push_back(make(
      "rigid-translation", "unit sphere translated along the z-axis",
      2, true, {},
      {"cos(u)*sin(v)", "sin(u)*sin(v)", "cos(v) + t"},
      {{{0.0, 2.0 * kPi}}, {{0.0, kPi}}}, {"sin(v)"}, 1.0));

  cat.push_back(make(
      "sphere-killing-rotation", "unit sphere rotating about the z-axis; tangential Killing flow",
      2, true, {},
      {"cos(u + t)*sin(v)", "sin(u + t)*sin(v)", "cos(v)"},
      {{{0.0, 2.0 * kPi}}, {{0.0, kPi}}}, {"sin(v)"}, 1.0));

  cat.push_back(make(
      "hyperbolic-circle", "circle in the Poincare half-plane shrinking toward its center",
      1, false,
      {{0, 0, "1/x2^2"}, {1, 1, "1/x2^2"}},
      {"(1.5 - t)*cos(u)", "2 + (1.5 - t)*sin(u)"},
      {{{0.0, 2.0 * kPi}}}, {}, 1.0));

  cat.push_back(make(
      "warped-graph", "graph over H^2 x R with a time-dependent warp; nonflat ambient",
      2, false,
      {{0, 0, "1/x2^2"}, {1, 1, "1/x2^2"}, {2, 2, "1"}},
      {"u", "2 + 0.3*sin(u)*cos(v) + 0.2*(t - 1)*sin(v)", "v + 0.1*(t - 1)"},
      {{{-0.6, 0.6}}, {{-0.6, 0.6}}}, {}, 1.0));

  cat.push_back(make(
      "normal-vn-graded", "sphere inflated at a latitude-graded normal speed",
      2, true, {},
      {"(1 + (t - 1)*(1 + 0.3*cos(v)))*cos(u)*sin(v)",
       "(1 + (t - 1)*(1 + 0.3*cos(v)))*sin(u)*sin(v)",
       "(1 + (t - 1)*(1 + 0.3*cos(v)))*cos(v)"},
      {{{0.0, 2.0 * kPi}}, {{0.0, kPi}}}, {"sin(v)"}, 1.0));

  cat.push_back(make(
      "plane-flow", "plane sheared in its own plane; tangential but not affine",
      2, true, {},
      {"u + (t - 1)*0.1*u^2", "v + (t - 1)*0.2*u", "0"},
      {{{-1.0, 1.0}}, {{-1.0, 1.0}}}, {}, 1.0));

  return cat;
}

[[noreturn]] void fail_line(const std::string& origin, int line, const std::string& msg) {
  throw ValidationError(origin + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& origin, int line,
                    const std::string& what) {
  const std::string t = trim(s);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto rc = std::from_chars(first, last, v);
  if (rc.ec != std::errc{} || rc.ptr != last)
    fail_line(origin, line, "expected a number for " + what + ", got '" + t + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& origin, int line,
              const std::string& what) {
  const std::string t = trim(s);
  int v = 0;
  auto rc = std::from_chars(t.data(), t.data() + t.size(), v);
  if (rc.ec != std::errc{} || rc.ptr != t.data() + t.size())
    fail_line(origin, line, "expected an integer for " + what + ", got '" + t + "'");
  return v;
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> catalog = build_catalog();
  return catalog;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : builtin_scenarios())
    if (s.name == name) return s;
  std::string names;
  for (const auto& s : builtin_scenarios()) {
    if (!names.empty()) names += ", ";
    names += s.name;
  }
  throw ValidationError("unknown scenario '" + name + "' (available: " + names + ")");
}

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  Scenario s;
  s.motion.m = 0;
  bool saw_schema = false, saw_name = false, euclid = false, saw_ambient = false;
  int metric_dim = 0;
  std::vector<std::tuple<int, int, expr::ExprPtr>> metric_entries;
  std::vector<std::tuple<std::string, std::array<double, 2>, int>> domains;
  std::vector<std::tuple<std::string, int, int>> grids;
  std::vector<expr::ExprPtr> components;
  std::vector<expr::ExprPtr> excludes;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail_line(origin, lineno, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    try {
      if (key == "schema") {
        if (value != "hyperkin-scenario/1")
          fail_line(origin, lineno, "unsupported schema '" + value + "'");
        saw_schema = true;
      } else if (key == "name") {
        s.name = value;
        saw_name = true;
      } else if (key == "description") {
        s.description = value;
      } else if (key == "m") {
        s.motion.m = parse_int(value, origin, lineno, "m");
        if (s.motion.m < 1 || s.motion.m > 3)
          fail_line(origin, lineno, "m must be 1..3");
      } else if (key == "t0") {
        s.grid.t0 = parse_double(value, origin, lineno, "t0");
      } else if (key == "fd_step") {
        s.grid.fd_step = parse_double(value, origin, lineno, "fd_step");
      } else if (key == "component") {
        components.push_back(expr::parse(value));
      } else if (key == "exclude") {
        excludes.push_back(expr::parse(value));
      } else if (key == "ambient") {
        saw_ambient = true;
        if (value == "euclidean") {
          euclid = true;
        } else if (value.rfind("metric", 0) == 0) {
          metric_dim = parse_int(value.substr(6), origin, lineno, "ambient metric dimension");
        } else {
          fail_line(origin, lineno, "ambient must be 'euclidean' or 'metric <n>'");
        }
      } else if (key.rfind("metric ", 0) == 0) {
        std::istringstream ks(key.substr(7));
        int i = 0, j = 0;
        if (!(ks >> i >> j))
          fail_line(origin, lineno, "metric entry key must be 'metric <i> <j>'");
        metric_entries.emplace_back(i - 1, j - 1, expr::parse(value));
      } else if (key.rfind("domain ", 0) == 0) {
        const std::string param = trim(key.substr(7));
        const std::size_t colon = value.find(':');
        if (colon == std::string::npos)
          fail_line(origin, lineno, "domain value must be 'lo : hi'");
        const double lo = parse_double(value.substr(0, colon), origin, lineno, "domain lower bound");
        const double hi = parse_double(value.substr(colon + 1), origin, lineno, "domain upper bound");
        domains.emplace_back(param, std::array<double, 2>{lo, hi}, lineno);
      } else if (key.rfind("grid ", 0) == 0) {
        const std::string param = trim(key.substr(5));
        grids.emplace_back(param, parse_int(value, origin, lineno, "grid count"), lineno);
      } else {
        fail_line(origin, lineno, "unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      fail_line(origin, lineno, std::string("expression error: ") + e.what());
    }
  }

  if (!saw_schema) throw ValidationError(origin + ": missing 'schema = hyperkin-scenario/1'");
  if (!saw_name) throw ValidationError(origin + ": missing 'name'");
  if (s.motion.m < 1 || s.motion.m > 3)
    throw ValidationError(origin + ": m must be 1..3");
  if (!saw_ambient) throw ValidationError(origin + ": missing 'ambient'");

  const int n = s.motion.m + 1;
  if (euclid) {
    if (!metric_entries.empty())
      throw ValidationError(origin + ": metric entries given for a euclidean ambient");
    s.motion.ambient = AmbientSpec::make_euclidean(n);
  } else {
    if (metric_dim != n)
      throw ValidationError(origin + ": ambient metric dimension " +
                            std::to_string(metric_dim) + " does not match m+1 = " +
                            std::to_string(n));
    s.motion.ambient = AmbientSpec::make_metric(n, metric_entries);
  }

  if (static_cast<int>(components.size()) != n)
    throw ValidationError(origin + ": expected " + std::to_string(n) +
                          " component lines, got " + std::to_string(components.size()));
  s.motion.components = components;

  const auto params = param_names(s.motion.m);
  s.motion.domain.assign(params.size(), {0.0, 0.0});
  std::vector<bool> have(params.size(), false);
  for (const auto& [p, iv, ln] : domains) {
    bool found = false;
    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i] == p) {
        s.motion.domain[i] = iv;
        have[i] = found = true;
      }
    if (!found) fail_line(origin, ln, "domain for unknown parameter '" + p + "'");
  }
  for (std::size_t i = 0; i < params.size(); ++i)
    if (!have[i])
      throw ValidationError(origin + ": missing domain for parameter '" + params[i] + "'");

  s.grid.counts.assign(params.size(), 17);
  for (const auto& [p, c, ln] : grids) {
    bool found = false;
    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i] == p) {
        if (c < 1) fail_line(origin, ln, "grid count for '" + p + "' must be >= 1");
        s.grid.counts[i] = c;
        found = true;
      }
    if (!found) fail_line(origin, ln, "grid for unknown parameter '" + p + "'");
  }

  s.motion.exclusions = excludes;

  validate_motion(s.motion);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

}  // namespace hyperkin
