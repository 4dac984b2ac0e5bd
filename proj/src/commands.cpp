#include "mgl/commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

namespace mgl {

namespace {

bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

int worst(int a, int b) {
  // Input errors dominate failures, which dominate distrust.
  auto rank = [](int c) { return c == kExitInputError ? 3 : c == kExitFailure ? 2 : c == kExitDistrust ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace

int cmd_identities(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.qmax < 1) {
    err << "error: --qmax must be at least 1\n";
    return kExitInputError;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto reports = run_identity_suite(cfg.qmax, cfg.workers, {cfg.inject_fault});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!cfg.inject_fault.empty()) {
    bool known = false;
    for (const auto& r : reports) known = known || r.name == cfg.inject_fault;
    if (!known) {
      err << "error: --inject-fault names no identity: '" << cfg.inject_fault << "'\n";
      return kExitInputError;
    }
  }

  int failed = 0;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::proved) continue;
    ++failed;
    err << "FAILED " << r.group << "/" << r.name << " q=" << r.q << "\n  residual: " << r.residual.str() << "\n";
  }
  JsonWriter w;
  w.begin_object();
  write_config(w, cfg);
  write_identities(w, reports);
  w.field("exit_status", failed ? int(kExitFailure) : int(kExitOk));
  w.end_object();
  if (!emit(w.str(), cfg.json_path, out, err)) return kExitInputError;
  if (!cfg.json_path.empty())
    out << reports.size() - failed << "/" << reports.size() << " identities proved for q = 1.." << cfg.qmax << " in "
        << seconds << " s\n";
  return failed ? kExitFailure : kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::map<std::string, double> tol;
  try {
    tol = effective_tolerances(cfg.tolerances);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  if (cfg.surfaces.empty()) {
    err << "error: verify needs at least one --surface\n";
    return kExitInputError;
  }
  ValidationOptions vopts;
  vopts.norm_tol = tol["norm"];
  vopts.minimality_tol = tol["minimality"];
  SampleOptions sopts;
  sopts.workers = cfg.workers;
  sopts.codazzi_tol = tol["codazzi"];
  sopts.minimality_tol = tol["minimality"];
  sopts.b1_cross_tol = tol["b1_cross"];
  sopts.simons.step = tol["simons_step"];
  sopts.simons.disagreement_tol = tol["simons_disagreement"];
  CertifyOptions copts;
  copts.constancy_rel = tol["constancy_rel"];
  copts.flat_normal = tol["flat_normal"];
  copts.conclusion_tol = tol["conclusion"];

  int status = kExitOk;
  JsonWriter w;
  w.begin_object();
  write_config(w, cfg);
  w.begin_array("results");
  for (const auto& source : cfg.surfaces) {
    int code = kExitOk;
    std::string message;
    SurfaceRun run;
    try {
      run.spec = load_immersion(source, vopts);
      run.grid = build_grid(run.spec, cfg.n1, cfg.n2, cfg.workers);
      run.samples = sample_surface(run.spec, run.grid, sopts);
      run.integrals = integral_report(run.spec, run.grid, run.samples);
      run.certificate = certify(run.spec, run.samples, run.integrals, copts);
      require_consistent(run.certificate);
    } catch (const SpecParseError& e) {
      code = kExitInputError;
      message = e.what();
    } catch (const SpecRejected& e) {
      code = kExitInputError;
      message = e.what();
    } catch (const std::invalid_argument& e) {
      code = kExitInputError;
      message = e.what();
    } catch (const CertificateViolation& e) {
      code = kExitFailure;
      message = e.what();
    } catch (const std::exception& e) {
      // Invariant violations, node evaluation and domain errors.
      code = kExitFailure;
      message = e.what();
    }

    if (code == kExitOk || code == kExitFailure) {
      if (!run.certificate.entries.empty()) {
        write_surface(w, run, cfg.points);
        const double budget = tol["flagged_fraction"] * run.integrals.node_count;
        if (run.integrals.flagged_nodes > budget) {
          err << "warning: '" << source << "': " << run.integrals.flagged_nodes << " of " << run.integrals.node_count
              << " nodes flagged, above the " << tol["flagged_fraction"] << " budget\n";
          code = worst(code, kExitDistrust);
        }
      }
    }
    if (!message.empty()) {
      err << "error: '" << source << "': " << message << "\n";
      if (run.certificate.entries.empty()) {
        w.begin_object();
        w.field("source", source);
        w.field("error", message);
        w.end_object();
      }
    }
    status = worst(status, code);
  }
  w.end_array();
  w.field("exit_status", status);
  w.end_object();
  if (!emit(w.str(), cfg.json_path, out, err)) return kExitInputError;
  return status;
}

std::string gamma_csv_path(const std::string& csv_path) {
  const auto slash = csv_path.find_last_of('/');
  const auto dot = csv_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return csv_path + "_gamma";
  return csv_path.substr(0, dot) + "_gamma" + csv_path.substr(dot);
}

int cmd_thresholds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.tau_points < 2 || cfg.gamma_points < 2) {
    err << "error: grid sizes must be at least 2\n";
    return kExitInputError;
  }
  std::vector<ThresholdValues> tau;
  std::vector<PinchingRoots> gamma;
  try {
    tau = threshold_table(cfg.tau_min.value_or(tau_star()), cfg.tau_max, cfg.tau_points);
    gamma = gamma_table(cfg.gamma_min, cfg.gamma_max, cfg.gamma_points);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  const auto tau_bad = check_threshold_table(tau);
  const auto gamma_bad = check_gamma_table(gamma);
  for (const auto& f : tau_bad) err << "FAILED " << f << "\n";
  for (const auto& f : gamma_bad) err << "FAILED " << f << "\n";

  if (cfg.csv_path.empty()) {
    out << threshold_csv(tau) << "\n" << gamma_csv(gamma);
  } else if (!emit(threshold_csv(tau), cfg.csv_path, out, err) ||
             !emit(gamma_csv(gamma), gamma_csv_path(cfg.csv_path), out, err)) {
    return kExitInputError;
  }
  const int status = tau_bad.empty() && gamma_bad.empty() ? kExitOk : kExitFailure;
  if (!cfg.json_path.empty()) {
    JsonWriter w;
    w.begin_object();
    write_config(w, cfg);
    write_threshold_checks(w, tau_bad, gamma_bad, tau.size(), gamma.size());
    w.field("exit_status", status);
    w.end_object();
    if (!emit(w.str(), cfg.json_path, out, err)) return kExitInputError;
  }
  return status;
}

int cmd_catalog_list(std::ostream& out) {
  for (const auto& name : catalog_names()) {
    const ImmersionSpec spec = catalog_entry(name);
    out << name << "  chart=" << to_string(spec.chart) << "  ambient_dim=" << spec.ambient_dim
        << "  euler_char=" << spec.euler_char << "\n";
  }
  return kExitOk;
}

namespace {

bool parse_resolution(const std::string& text, int& n1, int& n2) {
  const auto x = text.find('x');
  if (x == std::string::npos) return false;
  try {
    std::size_t used = 0;
    n1 = std::stoi(text.substr(0, x), &used);
    if (used != x) return false;
    n2 = std::stoi(text.substr(x + 1), &used);
    return used == text.size() - x - 1;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical and symbolic checks for minimal surfaces in spheres"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string resolution = "64x128";
  std::vector<std::string> tols;
  double tau_min = 0;

  auto* identities = app.add_subcommand("identities", "Prove the symbolic identity suite");
  identities->add_option("--qmax", cfg.qmax, "Largest codimension q")->capture_default_str();
  identities->add_option("--json", cfg.json_path, "Report path (stdout when omitted)");
  identities->add_option("--workers", cfg.workers)->capture_default_str();
  identities->add_option("--inject-fault", cfg.inject_fault, "Perturb the named identity (negative test)");

  auto* verify = app.add_subcommand("verify", "Sample, integrate and certify surfaces");
  verify->add_option("--surface", cfg.surfaces, "Catalog name or spec file (repeatable)")->required();
  verify->add_option("--resolution", resolution, "n1xn2 quadrature grid")->capture_default_str();
  verify->add_option("--json", cfg.json_path, "Report path (stdout when omitted)");
  verify->add_option("--workers", cfg.workers)->capture_default_str();
  verify->add_option("--tol", tols, "Tolerance override key=value (repeatable)");
  verify->add_flag("--no-points{false}", cfg.points, "Omit per-node records from the report");

  auto* thresholds = app.add_subcommand("thresholds", "Tabulate and check threshold functions");
  auto* tau_opt = thresholds->add_option("--tau-min", tau_min, "Left end of the tau grid (default tau*)");
  thresholds->add_option("--tau-max", cfg.tau_max)->capture_default_str();
  thresholds->add_option("--tau-points", cfg.tau_points)->capture_default_str();
  thresholds->add_option("--gamma-min", cfg.gamma_min)->capture_default_str();
  thresholds->add_option("--gamma-max", cfg.gamma_max)->capture_default_str();
  thresholds->add_option("--gamma-points", cfg.gamma_points)->capture_default_str();
  thresholds->add_option("--csv", cfg.csv_path, "tau table path; the gamma table goes to <stem>_gamma<ext>");
  thresholds->add_option("--json", cfg.json_path, "Check summary path");

  auto* catalog = app.add_subcommand("catalog", "Built-in surfaces");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  if (cfg.workers < 1) {
    err << "error: --workers must be at least 1\n";
    return kExitInputError;
  }

  if (*identities) {
    cfg.command = "identities";
    return cmd_identities(cfg, out, err);
  }
  if (*verify) {
    cfg.command = "verify";
    if (!parse_resolution(resolution, cfg.n1, cfg.n2) || cfg.n1 < 8 || cfg.n2 < 8) {
      err << "error: --resolution must look like 64x128 with both sizes at least 8\n";
      return kExitInputError;
    }
    for (const auto& t : tols) {
      const auto eq = t.find('=');
      try {
        if (eq == std::string::npos) throw std::invalid_argument(t);
        std::size_t used = 0;
        const double value = std::stod(t.substr(eq + 1), &used);
        if (used != t.size() - eq - 1) throw std::invalid_argument(t);
        cfg.tolerances[t.substr(0, eq)] = value;
      } catch (const std::exception&) {
        err << "error: --tol expects key=value, got '" << t << "'\n";
        return kExitInputError;
      }
    }
    return cmd_verify(cfg, out, err);
  }
  if (*thresholds) {
    cfg.command = "thresholds";
    if (tau_opt->count()) cfg.tau_min = tau_min;
    return cmd_thresholds(cfg, out, err);
  }
  if (*list) return cmd_catalog_list(out);
  return kExitInputError;
}

}  // namespace mgl
