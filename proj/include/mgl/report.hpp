#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mgl/gaps.hpp"
#include "mgl/lemmas.hpp"

namespace mgl {

/// Streaming writer for a JSON key-value tree. Members appear in call order
/// and doubles are printed with %.17g, so equal inputs give equal bytes.
/// Non-finite doubles are written as the strings "inf", "-inf", "nan".
class JsonWriter {
 public:
  void begin_object(const std::string& key = {});
  void end_object();
  void begin_array(const std::string& key = {});
  void end_array();

  void field(const std::string& key, double x);
  void field(const std::string& key, int x);
  void field(const std::string& key, bool x);
  void field(const std::string& key, const std::string& s);
  void field(const std::string& key, const char* s) { field(key, std::string(s)); }

  const std::string& str() const { return out_; }

 private:
  void open(const std::string& key, char bracket);
  void close(char bracket);
  void prefix(const std::string& key);

  std::string out_;
  std::vector<bool> first_;   // per open container: no member written yet
  std::vector<bool> in_array_;
};

std::string format_double(double x);

/// Effective run configuration. Worker count is deliberately absent from the
/// report echo: reports must not depend on it.
struct RunConfig {
  std::string command;
  std::vector<std::string> surfaces;
  int n1 = 64;
  int n2 = 128;
  int qmax = 6;
  int workers = 1;
  std::map<std::string, double> tolerances;
  std::string json_path;
  std::string csv_path;
  std::string inject_fault;
  std::optional<double> tau_min;  // unset means tau*
  double tau_max = 1;
  int tau_points = 1000;
  double gamma_min = 0;
  double gamma_max = 4;
  int gamma_points = 1000;
  bool points = true;  // per-node records in the verify report
};

/// Documented defaults for every --tol key.
const std::map<std::string, double>& default_tolerances();

/// Fills unspecified keys with defaults; throws std::invalid_argument for unknown keys.
std::map<std::string, double> effective_tolerances(const std::map<std::string, double>& overrides);

void write_config(JsonWriter& w, const RunConfig& cfg);

void write_identities(JsonWriter& w, const std::vector<IdentityReport>& reports);

struct SurfaceRun {
  ImmersionSpec spec;
  QuadratureGrid grid;
  std::vector<NodeSample> samples;
  IntegralReport integrals;
  GapCertificate certificate;
};

void write_surface(JsonWriter& w, const SurfaceRun& run, bool points);

void write_threshold_checks(JsonWriter& w, const std::vector<std::string>& tau_failures,
                            const std::vector<std::string>& gamma_failures, std::size_t tau_rows,
                            std::size_t gamma_rows);

}  // namespace mgl
