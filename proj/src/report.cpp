#include "mgl/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mgl {

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  if (x == 0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

}  // namespace

void JsonWriter::prefix(const std::string& key) {
  if (!first_.empty()) {
    if (!first_.back()) out_ += ",";
    out_ += "\n";
    first_.back() = false;
  }
  out_.append(2 * first_.size(), ' ');
  if (!in_array_.empty() && !in_array_.back()) out_ += quote(key) + ": ";
}

void JsonWriter::open(const std::string& key, char bracket) {
  prefix(key);
  out_ += bracket;
  first_.push_back(true);
  in_array_.push_back(bracket == '[');
}

void JsonWriter::close(char bracket) {
  if (first_.empty()) throw std::logic_error("unbalanced JsonWriter close");
  const bool empty = first_.back();
  first_.pop_back();
  in_array_.pop_back();
  if (!empty) {
    out_ += "\n";
    out_.append(2 * first_.size(), ' ');
  }
  out_ += bracket;
  if (first_.empty()) out_ += "\n";
}

void JsonWriter::begin_object(const std::string& key) { open(key, '{'); }
void JsonWriter::end_object() { close('}'); }
void JsonWriter::begin_array(const std::string& key) { open(key, '['); }
void JsonWriter::end_array() { close(']'); }

void JsonWriter::field(const std::string& key, double x) {
  prefix(key);
  out_ += format_double(x);
}

void JsonWriter::field(const std::string& key, int x) {
  prefix(key);
  out_ += std::to_string(x);
}

void JsonWriter::field(const std::string& key, bool x) {
  prefix(key);
  out_ += x ? "true" : "false";
}

void JsonWriter::field(const std::string& key, const std::string& s) {
  prefix(key);
  out_ += quote(s);
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"b1_cross", kB1CrossTolerance},
      {"codazzi", 1e-6},
      {"conclusion", 1e-6},
      {"constancy_rel", 1e-8},
      {"flagged_fraction", 0.01},
      {"flat_normal", 1e-8},
      {"minimality", 1e-8},
      {"norm", 1e-12},
      {"simons_disagreement", 1e-4},
      {"simons_step", 1e-3},
  };
  return defaults;
}

std::map<std::string, double> effective_tolerances(const std::map<std::string, double>& overrides) {
  std::map<std::string, double> out = default_tolerances();
  for (const auto& [key, value] : overrides) {
    auto it = out.find(key);
    if (it == out.end()) throw std::invalid_argument("unknown tolerance key '" + key + "'");
    if (!(value > 0)) throw std::invalid_argument("tolerance '" + key + "' must be positive");
    it->second = value;
  }
  return out;
}

void write_config(JsonWriter& w, const RunConfig& cfg) {
  w.begin_object("config");
  w.field("command", cfg.command);
  if (cfg.command == "verify") {
    w.begin_array("surfaces");
    for (const auto& s : cfg.surfaces) w.field("", s);
    w.end_array();
    w.field("resolution", std::to_string(cfg.n1) + "x" + std::to_string(cfg.n2));
    w.field("points", cfg.points);
    w.begin_object("tolerances");
    for (const auto& [key, value] : effective_tolerances(cfg.tolerances)) w.field(key, value);
    w.end_object();
  } else if (cfg.command == "identities") {
    w.field("qmax", cfg.qmax);
    w.field("inject_fault", cfg.inject_fault);
  } else if (cfg.command == "thresholds") {
    w.field("tau_min", cfg.tau_min.value_or(tau_star()));
    w.field("tau_max", cfg.tau_max);
    w.field("tau_points", cfg.tau_points);
    w.field("gamma_min", cfg.gamma_min);
    w.field("gamma_max", cfg.gamma_max);
    w.field("gamma_points", cfg.gamma_points);
  }
  w.end_object();
}

void write_identities(JsonWriter& w, const std::vector<IdentityReport>& reports) {
  int proved = 0;
  for (const auto& r : reports) proved += r.verdict == Verdict::proved;
  w.begin_object("identities");
  w.field("total", static_cast<int>(reports.size()));
  w.field("proved", proved);
  w.begin_array("results");
  for (const auto& r : reports) {
    w.begin_object();
    w.field("group", r.group);
    w.field("name", r.name);
    w.field("q", r.q);
    w.field("verdict", to_string(r.verdict));
    if (r.verdict == Verdict::failed) w.field("residual", r.residual.str());
    if (!r.note.empty()) w.field("note", r.note);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

namespace {

void write_range(JsonWriter& w, const std::string& key, const Range& r) {
  w.begin_object(key);
  w.field("min", r.min);
  w.field("max", r.max);
  w.end_object();
}

template <typename F>
void write_summary(JsonWriter& w, const std::string& key, const SurfaceRun& run, F f) {
  std::vector<double> v(run.samples.size());
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = f(run.samples[k]);
    lo = std::min(lo, v[k]);
    hi = std::max(hi, v[k]);
  }
  w.begin_object(key);
  w.field("min", lo);
  w.field("max", hi);
  w.field("mean", integrate(v, run.grid) / run.integrals.area);
  w.end_object();
}

}  // namespace

void write_surface(JsonWriter& w, const SurfaceRun& run, bool points) {
  const auto& spec = run.spec;
  w.begin_object();
  w.field("name", spec.name);
  w.field("chart", to_string(spec.chart));
  w.field("ambient_dim", spec.ambient_dim);
  w.field("codimension", spec.codimension());
  w.field("euler_char", spec.euler_char);
  w.begin_object("grid");
  w.field("n1", run.grid.n1);
  w.field("n2", run.grid.n2);
  w.field("nodes", static_cast<int>(run.grid.nodes.size()));
  w.field("rule", spec.chart == Chart::sphere ? "gauss-legendre(cos theta) x uniform(phi)" : "uniform x uniform");
  w.end_object();

  w.begin_object("fields");
  write_summary(w, "S", run, [](const NodeSample& s) { return s.inv.S; });
  write_summary(w, "K", run, [](const NodeSample& s) { return s.inv.K; });
  write_summary(w, "K_intrinsic", run, [](const NodeSample& s) { return s.K_intrinsic; });
  write_summary(w, "lambda1", run, [](const NodeSample& s) { return s.inv.lambda1; });
  write_summary(w, "lambda2", run, [](const NodeSample& s) { return s.inv.lambda2; });
  write_summary(w, "S_plus_lambda2", run, [](const NodeSample& s) { return s.inv.u; });
  write_summary(w, "rho0", run, [](const NodeSample& s) { return s.inv.rho0; });
  write_summary(w, "rho_perp", run, [](const NodeSample& s) { return s.inv.rho_perp; });
  write_summary(w, "t", run, [](const NodeSample& s) { return s.inv.t; });
  write_summary(w, "normA2", run, [](const NodeSample& s) { return s.inv.normA2; });
  write_summary(w, "ddvv_slack", run, [](const NodeSample& s) { return s.inv.ddvv_slack; });
  write_summary(w, "b1_direct", run, [](const NodeSample& s) { return s.b1_direct; });
  write_summary(w, "b1_simons", run, [](const NodeSample& s) { return s.simons.value; });
  write_summary(w, "b1_cross", run, [](const NodeSample& s) { return s.b1_cross; });
  write_summary(w, "minimality_residual", run, [](const NodeSample& s) { return s.minimality_residual; });
  write_summary(w, "codazzi_residual", run, [](const NodeSample& s) { return s.codazzi_residual; });
  write_summary(w, "eigen_residual", run, [](const NodeSample& s) { return s.inv.eigen_residual; });
  w.end_object();

  const auto& ir = run.integrals;
  w.begin_object("integrals");
  w.field("area", ir.area);
  w.field("integral_K", ir.integral_K);
  w.field("gauss_bonnet_residual", ir.gauss_bonnet_residual);
  w.field("gauss_equation_residual", ir.gauss_equation_residual);
  w.field("integral_S", ir.integral_S);
  w.field("integral_lap_S", ir.integral_lap_S);
  w.field("gap1_lhs", ir.gap1_lhs);
  w.field("gap1_rhs", ir.gap1_rhs);
  w.field("gap1_residual", ir.gap1_residual);
  w.field("gap2_form1", ir.gap2_form1);
  w.field("gap2_form2", ir.gap2_form2);
  w.field("integral_rho_perp2", ir.integral_rho_perp2);
  w.field("bound_445", ir.bound_445);
  w.field("mean_u", ir.mean_u);
  w.field("max_u", ir.max_u);
  w.field("min_u", ir.min_u);
  w.field("min_rho_perp", ir.min_rho_perp);
  w.field("flagged_nodes", ir.flagged_nodes);
  w.field("node_count", ir.node_count);
  w.end_object();

  const auto& cert = run.certificate;
  w.begin_object("certificate");
  w.begin_object("extremes");
  write_range(w, "S", cert.extremes.S);
  write_range(w, "S_plus_lambda2", cert.extremes.u);
  write_range(w, "rho_perp", cert.extremes.rho_perp);
  write_range(w, "t", cert.extremes.t);
  write_range(w, "K", cert.extremes.K);
  w.field("max_lambda_gap", cert.extremes.max_lambda_gap);
  w.field("max_hopf", cert.extremes.max_hopf);
  w.field("gamma5_1", cert.extremes.gamma5_1);
  w.field("gamma5_2", cert.extremes.gamma5_2);
  w.end_object();
  w.begin_array("entries");
  for (const auto& e : cert.entries) {
    w.begin_object();
    w.field("theorem", e.theorem);
    w.field("hypothesis", e.hypothesis);
    w.field("hypothesis_holds", e.hypothesis_holds);
    w.field("conclusion", e.conclusion);
    w.field("measured", e.measured);
    w.field("bound", e.bound);
    w.field("margin", e.margin);
    w.field("verdict", to_string(e.verdict));
    if (!e.note.empty()) w.field("note", e.note);
    w.end_object();
  }
  w.end_array();
  w.field("violated", cert.violated());
  w.end_object();

  if (points) {
    w.begin_array("points");
    for (const auto& s : run.samples) {
      w.begin_object();
      w.field("u", s.p.u);
      w.field("v", s.p.v);
      w.field("S", s.inv.S);
      w.field("lambda1", s.inv.lambda1);
      w.field("lambda2", s.inv.lambda2);
      w.field("S_plus_lambda2", s.inv.u);
      w.field("rho_perp", s.inv.rho_perp);
      w.field("t", s.inv.t);
      w.field("K", s.inv.K);
      w.field("K_intrinsic", s.K_intrinsic);
      w.field("b1_direct", s.b1_direct);
      w.field("b1_simons", s.simons.value);
      w.field("flagged", s.flagged);
      w.end_object();
    }
    w.end_array();
  }
  w.end_object();
}

void write_threshold_checks(JsonWriter& w, const std::vector<std::string>& tau_failures,
                            const std::vector<std::string>& gamma_failures, std::size_t tau_rows,
                            std::size_t gamma_rows) {
  w.begin_object("thresholds");
  w.field("tau_rows", static_cast<int>(tau_rows));
  w.field("gamma_rows", static_cast<int>(gamma_rows));
  w.begin_array("tau_failures");
  for (const auto& f : tau_failures) w.field("", f);
  w.end_array();
  w.begin_array("gamma_failures");
  for (const auto& f : gamma_failures) w.field("", f);
  w.end_array();
  w.field("passed", tau_failures.empty() && gamma_failures.empty());
  w.end_object();
}

}  // namespace mgl
