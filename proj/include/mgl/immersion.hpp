#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgl {

enum class Chart { sphere, torus };

const char* to_string(Chart c);

/// coeff * x^i y^j z^k, restricted to the unit 2-sphere.
struct MonomialTerm {
  double coeff = 0;
  std::array<int, 3> exps{};
};

/// coeff * cos(m u + n v) or coeff * sin(m u + n v).
struct TrigTerm {
  enum class Kind { cos, sin };
  double coeff = 0;
  Kind type = Kind::cos;
  std::array<int, 2> freq{};
};

struct ImmersionSpec {
  std::string name;
  Chart chart = Chart::sphere;
  int ambient_dim = 0;
  int euler_char = 2;
  // Exactly one of these is populated, according to `chart`.
  std::vector<std::vector<MonomialTerm>> sphere_components;
  std::vector<std::vector<TrigTerm>> torus_components;

  int codimension() const { return ambient_dim - 3; }
};

/// Chart parameters. On the sphere chart u = theta (polar), v = phi.
struct ChartPoint {
  double u = 0;
  double v = 0;
};

class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(const std::string& path, int line, const std::string& what);
  const std::string& path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

struct ValidationReport {
  int samples = 0;
  double max_norm_residual = 0;       // max | |X|^2 - 1 |
  double max_mean_curvature = 0;      // max |H|
};

class SpecRejected : public std::runtime_error {
 public:
  SpecRejected(const std::string& what, ValidationReport report)
      : std::runtime_error(what), report_(report) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct ValidationOptions {
  int grid = 64;
  double norm_tol = 1e-12;
  double minimality_tol = 1e-8;
};

ImmersionSpec parse_spec(const std::string& text);
std::string serialize_spec(const ImmersionSpec& spec);

const std::vector<std::string>& catalog_names();
/// Unvalidated catalog construction; throws std::invalid_argument for an unknown name.
ImmersionSpec catalog_entry(const std::string& name);

/// Checks |X| = 1 and minimality on a grid of chart points.
ValidationReport validate(const ImmersionSpec& spec, const ValidationOptions& opts = {});

/// Catalog name or path to a spec file. The result has passed validation.
ImmersionSpec load_immersion(const std::string& source, const ValidationOptions& opts = {});

/// Pointwise value of the immersion (no derivatives).
std::vector<double> evaluate_immersion(const ImmersionSpec& spec, ChartPoint p);

}  // namespace mgl
