#include "hyperkin/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hyperkin/report.hpp"

namespace hyperkin {

namespace {

struct Selection {
  std::string scenario;
  std::string file;
  double t = 0.0;
  bool has_t = false;
  std::string grid;
};

void add_selection(CLI::App* cmd, Selection& sel) {
  auto* s = cmd->add_option("--scenario", sel.scenario, "Name of a built-in scenario");
  auto* f = cmd->add_option("--file", sel.file, "Path to a scenario file");
  s->excludes(f);
  f->excludes(s);
  cmd->add_option("--t", sel.t, "Evaluation time (defaults to the scenario's t0)")
      ->each([&sel](const std::string&) { sel.has_t = true; });
  cmd->add_option("--grid", sel.grid,
                  "Grid override: N for all axes or N,N[,N] per axis");
}

Scenario select(const Selection& sel) {
  if (!sel.scenario.empty()) return find_scenario(sel.scenario);
  if (!sel.file.empty()) return load_scenario(sel.file);
  throw ValidationError("one of --scenario or --file is required");
}

RunOptions options_from(const Selection& sel, const Tolerances& tol, bool fd_validate) {
  RunOptions opt;
  opt.tol = tol;
  opt.fd_validate = fd_validate;
  if (sel.has_t) opt.t = sel.t;
  if (!sel.grid.empty()) {
    std::istringstream in(sel.grid);
    std::string piece;
    while (std::getline(in, piece, ',')) {
      try {
        std::size_t used = 0;
        const int n = std::stoi(piece, &used);
        if (used != piece.size()) throw std::invalid_argument(piece);
        opt.grid.push_back(n);
      } catch (const std::exception&) {
        throw ValidationError("bad --grid value '" + piece + "'");
      }
    }
    if (opt.grid.empty()) throw ValidationError("--grid needs at least one count");
  }
  return opt;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

std::string verdict_line(const RunResult& r) {
  std::ostringstream os;
  os << "verdict: affine = " << (r.verdict.affine ? "true" : "false")
     << ", isometric = " << (r.verdict.isometric ? "true" : "false")
     << "  (sup|D| = " << sci(r.sup_d) << ", sup|nabla D| = " << sci(r.sup_nabla_d)
     << ", sup|delta conn| = " << sci(r.sup_delta_conn) << ")";
  return os.str();
}

std::string motion_class_name(const MotionClass& c) {
  if (c.tangential) return "tangential";
  if (c.parallel_normal) return "parallel normal";
  if (c.normal) return "normal";
  return "mixed";
}

int cmd_list(std::ostream& out) {
  for (const auto& sc : builtin_scenarios()) {
    out << std::left << std::setw(24) << sc.name << " m=" << sc.motion.m
        << "  t0=" << sc.grid.t0 << "  " << sc.description << "\n";
  }
  return 0;
}

int cmd_analyze(const Selection& sel, const Tolerances& tol, bool fd_validate,
                const std::string& format, const std::string& out_path,
                std::ostream& out) {
  Scenario sc = select(sel);
  RunResult r = run_grid(sc, options_from(sel, tol, fd_validate));
  std::string text;
  if (format == "json") {
    text = report_json(r);
  } else if (format == "csv-summary") {
    text = report_csv(r);
  } else {
    throw ValidationError("unknown --format '" + format + "' (json, csv-summary)");
  }
  if (out_path.empty()) {
    out << text;
    if (format == "json") out << "\n";
  } else {
    write_report_file(text, out_path);
  }
  return 0;
}

int cmd_classify(const Selection& sel, const Tolerances& tol, bool fd_validate,
                 std::ostream& out) {
  Scenario sc = select(sel);
  RunResult r = run_grid(sc, options_from(sel, tol, fd_validate));
  out << sc.name << ": " << verdict_line(r) << "\n";
  return 0;
}

struct Check {
  const char* name;
  double residual;
  double tol;
  bool applicable = true;
};

int cmd_verify(const Selection& sel, const Tolerances& tol, bool fd_validate,
               std::ostream& out) {
  Scenario sc = select(sel);
  RunResult r = run_grid(sc, options_from(sel, tol, fd_validate));

  int usable = 0;
  for (const auto& p : r.points)
    if (!p.skipped) ++usable;
  out << "scenario: " << sc.name << "  t = " << r.t << "  points = " << usable
      << " (" << r.skipped << " skipped)\n";
  out << "motion class: " << motion_class_name(r.cls)
      << "  (sup|vn| = " << sci(r.cls.sup_vn)
      << ", sup|vpar| = " << sci(r.cls.sup_vpar)
      << ", sup|grad vn| = " << sci(r.cls.sup_grad_vn) << ")\n";

  std::vector<Check> checks{
      {"route-agreement", r.sup_route_disagreement, tol.tol_route},
      {"route-symmetry", r.sup_symmetry, 1e-8},
      {"stretching-kinematic", r.sup_d_kinematic, tol.tol_d_routes},
      {"stretching-cauchy-green", r.sup_d_cauchy_green, tol.tol_d_routes},
      {"velocity-split", r.sup_v_split, 1e-10},
      {"spin-antisymmetry", r.sup_w_antisymmetry, 1e-8},
      {"metric-rate", r.sup_metric_rate, 1e-9},
      {"normal-rate", r.sup_normal_rate, 1e-7},
      {"gauss", r.sup_gauss, 1e-8},
      {"codazzi", r.sup_codazzi, 1e-8},
      {"tangential-reduction", r.sup_def_vs_lie, 1e-8, r.cls.tangential},
      {"normal-form-pair", r.sup_normal_pair.value_or(0.0), 1e-8,
       r.sup_normal_pair.has_value()},
      {"fd-connection-oracle", r.sup_fd_delta_conn.value_or(0.0), 1e-6,
       r.sup_fd_delta_conn.has_value()},
  };

  bool all_ok = true;
  for (const auto& c : checks) {
    if (!c.applicable) {
      out << "  --    " << std::left << std::setw(26) << c.name
          << " not applicable to this motion\n";
      continue;
    }
    const bool ok = c.residual < c.tol;
    all_ok = all_ok && ok;
    out << (ok ? "  PASS  " : "  FAIL  ") << std::left << std::setw(26) << c.name
        << " " << sci(c.residual) << "  (tol " << sci(c.tol) << ")\n";
  }
  out << verdict_line(r) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_check_expr(const std::string& text, const std::string& vars,
                   std::ostream& out, std::ostream& err) {
  try {
    auto e = expr::parse(text);
    std::set<std::string> allowed;
    std::istringstream in(vars);
    std::string piece;
    while (std::getline(in, piece, ',')) {
      while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
      while (!piece.empty() && piece.back() == ' ') piece.pop_back();
      if (!piece.empty()) allowed.insert(piece);
    }
    for (const auto& v : expr::free_vars(*e))
      if (!allowed.count(v)) {
        err << "unknown variable '" << v << "' (allowed: " << vars << ")\n";
        return 2;
      }
    out << expr::to_string(*e) << "\n";
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kinematics of moving hypersurfaces: fundamental forms, stretching, "
               "and the variation of the induced connection"};
  app.name("hyperkin");
  app.fallthrough();
  app.require_subcommand(1);

  Tolerances tol;
  bool fd_validate = false;
  app.add_option("--tol-affine", tol.tol_affine, "Affine verdict tolerance");
  app.add_option("--tol-iso", tol.tol_iso, "Isometric verdict tolerance");
  app.add_option("--tol-route", tol.tol_route, "Route agreement tolerance");
  app.add_flag("--fd-validate", fd_validate,
               "Cross-check the connection variation by finite differences");

  app.add_subcommand("list", "List the built-in scenarios");

  Selection an_sel, cl_sel, vf_sel;
  std::string format = "json", out_path;
  auto* analyze = app.add_subcommand("analyze", "Run a scenario grid and emit a report");
  add_selection(analyze, an_sel);
  analyze->add_option("--format", format, "Report format: json or csv-summary");
  analyze->add_option("--out", out_path, "Write the report to this path");

  auto* classify_cmd = app.add_subcommand("classify", "Run a scenario and print the verdict");
  add_selection(classify_cmd, cl_sel);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on a scenario");
  add_selection(verify, vf_sel);

  std::string expr_text, expr_vars = "u,v,w,t";
  auto* check = app.add_subcommand("check-expr", "Parse an expression and echo its canonical form");
  check->add_option("expr", expr_text, "Expression to parse")->required();
  check->add_option("--vars", expr_vars, "Comma-separated allowed variables");

  std::vector<const char*> argv;
  argv.push_back("hyperkin");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand("list")) return cmd_list(out);
    if (app.got_subcommand("analyze"))
      return cmd_analyze(an_sel, tol, fd_validate, format, out_path, out);
    if (app.got_subcommand("classify")) return cmd_classify(cl_sel, tol, fd_validate, out);
    if (app.got_subcommand("verify")) return cmd_verify(vf_sel, tol, fd_validate, out);
    if (app.got_subcommand("check-expr")) return cmd_check_expr(expr_text, expr_vars, out, err);
    err << "error: no subcommand\n" << app.help();
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hyperkin
