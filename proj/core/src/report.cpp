#include "hyperkin/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace hyperkin {

namespace {

std::string fmt(double x) {
  if (!std::isfinite(x)) throw ValidationError("report contains a non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string arr1(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt(v[i]);
  }
  return s + "]";
}

std::string arr2(const Vals2& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += arr1(v[i]);
  }
  return s + "]";
}

std::string arr3(const Vals3& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += arr2(v[i]);
  }
  return s + "]";
}

std::string jbool(bool b) { return b ? "true" : "false"; }

std::string point_json(const PointRecord& p) {
  std::string s = "{";
  s += "\"coordinates\":" + arr1(p.u);
  if (p.skipped) {
    s += ",\"skip_reason\":" + jstr(p.skip_reason);
    s += ",\"skipped\":true}";
    return s;
  }
  s += ",\"d\":" + arr2(p.d);
  s += ",\"d_sup\":" + fmt(p.d_sup);
  s += ",\"delta_conn\":{";
  s += "\"definition\":" + arr3(p.delta_definition);
  if (p.delta_euclidean_normal)
    s += ",\"euclidean_normal\":" + arr3(*p.delta_euclidean_normal);
  s += ",\"geometric\":" + arr3(p.delta_geometric);
  s += ",\"lie\":" + arr3(p.delta_lie);
  if (p.delta_normal) s += ",\"normal\":" + arr3(*p.delta_normal);
  if (p.delta_parallel) s += ",\"parallel\":" + arr3(*p.delta_parallel);
  s += ",\"projection\":" + arr3(p.delta_projection);
  s += ",\"stretch\":" + arr3(p.delta_stretch);
  s += "}";
  s += ",\"delta_conn_sup\":" + fmt(p.delta_conn_sup);
  s += ",\"g\":" + arr2(p.g);
  s += ",\"gamma\":" + arr3(p.gamma);
  s += ",\"grad_vn_norm\":" + fmt(p.grad_vn_norm);
  s += ",\"nabla_d_sup\":" + fmt(p.nabla_d_sup);
  s += ",\"residuals\":{";
  s += "\"codazzi\":" + fmt(p.res.codazzi);
  s += ",\"d_cauchy_green\":" + fmt(p.res.d_cauchy_green);
  s += ",\"d_kinematic\":" + fmt(p.res.d_kinematic);
  if (p.res.fd_delta_conn) s += ",\"fd_delta_conn\":" + fmt(*p.res.fd_delta_conn);
  s += ",\"gauss\":" + fmt(p.res.gauss);
  s += ",\"metric_rate\":" + fmt(p.res.metric_rate);
  s += ",\"normal_rate\":" + fmt(p.res.normal_rate);
  s += ",\"route_disagreement\":" + fmt(p.res.route_disagreement);
  s += ",\"symmetry\":" + fmt(p.res.symmetry);
  s += ",\"v_split\":" + fmt(p.res.v_split);
  s += ",\"w_antisymmetry\":" + fmt(p.res.w_antisymmetry);
  s += "}";
  s += ",\"shape_eigenvalues\":" + arr1(p.shape_eigs);
  s += ",\"skipped\":false";
  s += ",\"vn\":" + fmt(p.vn);
  s += ",\"vpar_norm\":" + fmt(p.vpar_norm);
  s += "}";
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_json(const RunResult& r) {
  std::string s = "{";
  s += "\"aggregates\":{";
  s += "\"skipped\":" + std::to_string(r.skipped);
  s += ",\"sup_codazzi\":" + fmt(r.sup_codazzi);
  s += ",\"sup_d\":" + fmt(r.sup_d);
  s += ",\"sup_d_cauchy_green\":" + fmt(r.sup_d_cauchy_green);
  s += ",\"sup_d_kinematic\":" + fmt(r.sup_d_kinematic);
  s += ",\"sup_delta_conn\":" + fmt(r.sup_delta_conn);
  if (r.sup_fd_delta_conn) s += ",\"sup_fd_delta_conn\":" + fmt(*r.sup_fd_delta_conn);
  s += ",\"sup_gauss\":" + fmt(r.sup_gauss);
  s += ",\"sup_lie_conn\":" + fmt(r.sup_lie_conn);
  s += ",\"sup_metric_rate\":" + fmt(r.sup_metric_rate);
  s += ",\"sup_nabla_d\":" + fmt(r.sup_nabla_d);
  s += ",\"sup_normal_rate\":" + fmt(r.sup_normal_rate);
  s += ",\"sup_route_disagreement\":" + fmt(r.sup_route_disagreement);
  s += ",\"sup_symmetry\":" + fmt(r.sup_symmetry);
  s += ",\"sup_v_split\":" + fmt(r.sup_v_split);
  s += ",\"sup_w_antisymmetry\":" + fmt(r.sup_w_antisymmetry);
  s += "}";
  s += ",\"classification\":{";
  s += "\"normal\":" + jbool(r.cls.normal);
  s += ",\"parallel_normal\":" + jbool(r.cls.parallel_normal);
  s += ",\"sup_grad_vn\":" + fmt(r.cls.sup_grad_vn);
  s += ",\"sup_vn\":" + fmt(r.cls.sup_vn);
  s += ",\"sup_vpar\":" + fmt(r.cls.sup_vpar);
  s += ",\"tangential\":" + jbool(r.cls.tangential);
  s += "}";
  s += ",\"grid\":{\"counts\":[";
  for (std::size_t i = 0; i < r.grid_counts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(r.grid_counts[i]);
  }
  s += "],\"shrink\":" + fmt(r.scenario.grid.shrink);
  s += ",\"t\":" + fmt(r.t);
  s += "}";
  s += ",\"points\":[";
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    if (i) s += ',';
    s += point_json(r.points[i]);
  }
  s += "]";
  s += ",\"routes\":{";
  s += "\"euclidean_normal\":" + jbool(r.flags.euclidean_normal);
  s += ",\"normal\":" + jbool(r.flags.normal);
  s += ",\"parallel\":" + jbool(r.flags.parallel);
  s += "}";
  s += ",\"scenario\":{";
  s += "\"ambient\":" + jstr(r.scenario.motion.ambient.euclidean ? "euclidean" : "metric");
  s += ",\"description\":" + jstr(r.scenario.description);
  s += ",\"m\":" + std::to_string(r.scenario.motion.m);
  s += ",\"name\":" + jstr(r.scenario.name);
  s += ",\"t0\":" + fmt(r.scenario.grid.t0);
  s += "}";
  s += ",\"schema\":\"hyperkin-report/1\"";
  s += ",\"tolerances\":{";
  s += "\"fd_step\":" + fmt(r.tol.fd_step);
  s += ",\"tol_affine\":" + fmt(r.tol.tol_affine);
  s += ",\"tol_class\":" + fmt(r.tol.tol_class);
  s += ",\"tol_d_routes\":" + fmt(r.tol.tol_d_routes);
  s += ",\"tol_excl\":" + fmt(r.tol.tol_excl);
  s += ",\"tol_iso\":" + fmt(r.tol.tol_iso);
  s += ",\"tol_route\":" + fmt(r.tol.tol_route);
  s += ",\"tol_sing\":" + fmt(r.tol.tol_sing);
  s += "}";
  s += ",\"verdict\":{";
  s += "\"affine\":" + jbool(r.verdict.affine);
  s += ",\"isometric\":" + jbool(r.verdict.isometric);
  s += ",\"sup_d\":" + fmt(r.verdict.sup_d);
  s += ",\"sup_delta_conn\":" + fmt(r.verdict.sup_delta_conn);
  s += ",\"sup_lie_conn\":" + fmt(r.verdict.sup_lie_conn);
  s += ",\"sup_nabla_d\":" + fmt(r.verdict.sup_nabla_d);
  s += "}";
  s += "}";
  return s;
}

std::string report_csv(const RunResult& r) {
  const int m = r.scenario.motion.m;
  std::string s = "scenario,t,index";
  const auto params = param_names(m);
  for (const auto& p : params) s += "," + p;
  s += ",skipped,skip_reason,vn,vpar_norm,grad_vn_norm,d_sup,nabla_d_sup,"
       "delta_conn_sup,route_disagreement,symmetry,d_kinematic,d_cauchy_green,"
       "v_split,w_antisymmetry,metric_rate,normal_rate,gauss,codazzi,"
       "shape_eig_min,shape_eig_max,"
       "sup_d,sup_nabla_d,sup_delta_conn,sup_route_disagreement,affine,isometric\r\n";
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const PointRecord& p = r.points[i];
    s += csv_field(r.scenario.name) + "," + fmt(r.t) + "," + std::to_string(i);
    for (double u : p.u) s += "," + fmt(u);
    if (p.skipped) {
      s += ",true," + csv_field(p.skip_reason);
      for (int c = 0; c < 18; ++c) s += ",";
    } else {
      s += ",false,";
      s += "," + fmt(p.vn);
      s += "," + fmt(p.vpar_norm);
      s += "," + fmt(p.grad_vn_norm);
      s += "," + fmt(p.d_sup);
      s += "," + fmt(p.nabla_d_sup);
      s += "," + fmt(p.delta_conn_sup);
      s += "," + fmt(p.res.route_disagreement);
      s += "," + fmt(p.res.symmetry);
      s += "," + fmt(p.res.d_kinematic);
      s += "," + fmt(p.res.d_cauchy_green);
      s += "," + fmt(p.res.v_split);
      s += "," + fmt(p.res.w_antisymmetry);
      s += "," + fmt(p.res.metric_rate);
      s += "," + fmt(p.res.normal_rate);
      s += "," + fmt(p.res.gauss);
      s += "," + fmt(p.res.codazzi);
      s += "," + fmt(p.shape_eigs.front());
      s += "," + fmt(p.shape_eigs.back());
    }
    s += "," + fmt(r.sup_d);
    s += "," + fmt(r.sup_nabla_d);
    s += "," + fmt(r.sup_delta_conn);
    s += "," + fmt(r.sup_route_disagreement);
    s += std::string(",") + (r.verdict.affine ? "true" : "false");
    s += std::string(",") + (r.verdict.isometric ? "true" : "false");
    s += "\r\n";
  }
  return s;
}

void write_report_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write report file '" + path + "'");
  out << text;
  out.close();
  if (!out) throw ValidationError("error while writing report file '" + path + "'");
}

}  // namespace hyperkin
