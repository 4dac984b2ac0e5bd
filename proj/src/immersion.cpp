#include "mgl/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "mgl/jet.hpp"

namespace mgl {

const char* to_string(Chart c) { return c == Chart::sphere ? "sphere" : "torus"; }

SpecParseError::SpecParseError(const std::string& path, int line, const std::string& what)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "spec parse error";
        if (line > 0) os << " at line " << line;
        if (!path.empty()) os << " in field '" << path << "'";
        os << ": " << what;
        return os.str();
      }()),
      path_(path),
      line_(line) {}

namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecParseError(path + key, 0, "missing required field");
  return *it;
}

int require_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) throw SpecParseError(path + key, 0, "expected an integer");
  return v.get<int>();
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) throw SpecParseError(path + key, 0, "expected a number");
  return v.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw SpecParseError(path + it.key(), 0, "unknown field");
  }
}

template <std::size_t N>
std::array<int, N> int_array(const json& obj, const std::string& key, const std::string& path,
                             bool nonnegative) {
  const json& v = require(obj, key, path);
  if (!v.is_array() || v.size() != N)
    throw SpecParseError(path + key, 0, "expected an array of " + std::to_string(N) + " integers");
  std::array<int, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    const std::string here = path + key + "[" + std::to_string(i) + "]";
    if (!v[i].is_number_integer()) throw SpecParseError(here, 0, "expected an integer");
    out[i] = v[i].get<int>();
    if (nonnegative && out[i] < 0) throw SpecParseError(here, 0, "exponent must be nonnegative");
  }
  return out;
}

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

// ---- real solid harmonics -------------------------------------------------

using Poly3 = std::map<std::array<int, 3>, double>;

Poly3 mul(const Poly3& a, const Poly3& b) {
  Poly3 r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
  return r;
}

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double fact(int n) { return n <= 1 ? 1.0 : n * fact(n - 1); }

// Re and Im of (x + i y)^m.
std::pair<Poly3, Poly3> xy_power(int m) {
  Poly3 re, im;
  for (int k = 0; k <= m; ++k) {
    const double c = binom(m, k);
    const std::array<int, 3> e = {m - k, k, 0};
    switch (k % 4) {
      case 0: re[e] += c; break;
      case 1: im[e] += c; break;
      case 2: re[e] -= c; break;
      default: im[e] -= c; break;
    }
  }
  return {re, im};
}

// z-part of the solid harmonic of degree l and order m, homogeneous of
// degree l - m in (x, y, z).
Poly3 legendre_part(int l, int m) {
  const Poly3 r2 = {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 1.0}};
  Poly3 out;
  for (int k = 0; 2 * k <= l - m; ++k) {
    const double c = (k % 2 ? -1.0 : 1.0) * std::ldexp(1.0, -l) * binom(l, k) * binom(2 * l - 2 * k, l) *
                     fact(l - 2 * k) / fact(l - 2 * k - m);
    Poly3 term = {{{0, 0, l - 2 * k - m}, c}};
    for (int p = 0; p < k; ++p) term = mul(term, r2);
    for (const auto& [e, v] : term) out[e] += v;
  }
  return out;
}

std::vector<MonomialTerm> to_terms(const Poly3& p, double scale) {
  std::vector<MonomialTerm> out;
  for (const auto& [e, c] : p)
    if (c != 0) out.push_back({c * scale, e});
  return out;
}

// sqrt(4 pi / (2s+1)) times an orthonormal basis of degree-s harmonics, so
// the sum of squares is identically 1 on the unit sphere.
std::vector<std::vector<MonomialTerm>> harmonic_components(int s) {
  std::vector<std::vector<MonomialTerm>> comps;
  const double lift = std::sqrt(4 * std::numbers::pi / (2 * s + 1));
  const double base = std::sqrt((2 * s + 1) / (4 * std::numbers::pi));
  comps.push_back(to_terms(legendre_part(s, 0), lift * base));
  for (int m = 1; m <= s; ++m) {
    const double n = std::sqrt(2.0) * base * std::sqrt(fact(s - m) / fact(s + m));
    const Poly3 pz = legendre_part(s, m);
    const auto [re, im] = xy_power(m);
    comps.push_back(to_terms(mul(pz, re), lift * n));
    comps.push_back(to_terms(mul(pz, im), lift * n));
  }
  return comps;
}

ImmersionSpec calabi(const std::string& name, int s) {
  ImmersionSpec spec;
  spec.name = name;
  spec.chart = Chart::sphere;
  spec.euler_char = 2;
  spec.sphere_components = harmonic_components(s);
  spec.ambient_dim = static_cast<int>(spec.sphere_components.size());
  return spec;
}

}  // namespace

ImmersionSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecParseError("", line_of(text, e.byte), e.what());
  }
  if (!doc.is_object()) throw SpecParseError("", 1, "top level must be an object");
  reject_unknown(doc, {"name", "chart", "ambient_dim", "euler_char", "components"}, "");

  ImmersionSpec spec;
  const json& name = require(doc, "name", "");
  if (!name.is_string()) throw SpecParseError("name", 0, "expected a string");
  spec.name = name.get<std::string>();

  const json& chart = require(doc, "chart", "");
  if (chart == "sphere") {
    spec.chart = Chart::sphere;
  } else if (chart == "torus") {
    spec.chart = Chart::torus;
  } else {
    throw SpecParseError("chart", 0, "expected \"sphere\" or \"torus\"");
  }

  spec.ambient_dim = require_int(doc, "ambient_dim", "");
  if (spec.ambient_dim < 3) throw SpecParseError("ambient_dim", 0, "must be at least 3");
  spec.euler_char = require_int(doc, "euler_char", "");
  const int expected_chi = spec.chart == Chart::sphere ? 2 : 0;
  if (spec.euler_char != expected_chi)
    throw SpecParseError("euler_char", 0,
                         "must be " + std::to_string(expected_chi) + " for the " + to_string(spec.chart) + " chart");

  const json& comps = require(doc, "components", "");
  if (!comps.is_array()) throw SpecParseError("components", 0, "expected an array");
  if (static_cast<int>(comps.size()) != spec.ambient_dim)
    throw SpecParseError("components", 0,
                         "has " + std::to_string(comps.size()) + " entries, ambient_dim is " +
                             std::to_string(spec.ambient_dim));

  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string cpath = "components[" + std::to_string(i) + "]";
    if (!comps[i].is_array()) throw SpecParseError(cpath, 0, "expected an array of terms");
    std::vector<MonomialTerm> mono;
    std::vector<TrigTerm> trig;
    for (std::size_t k = 0; k < comps[i].size(); ++k) {
      const json& term = comps[i][k];
      const std::string tpath = cpath + "[" + std::to_string(k) + "].";
      if (!term.is_object()) throw SpecParseError(tpath.substr(0, tpath.size() - 1), 0, "expected an object");
      if (spec.chart == Chart::sphere) {
        reject_unknown(term, {"coeff", "exps"}, tpath);
        mono.push_back({require_number(term, "coeff", tpath), int_array<3>(term, "exps", tpath, true)});
      } else {
        reject_unknown(term, {"coeff", "type", "freq"}, tpath);
        TrigTerm t;
        t.coeff = require_number(term, "coeff", tpath);
        const json& type = require(term, "type", tpath);
        if (type == "cos") {
          t.type = TrigTerm::Kind::cos;
        } else if (type == "sin") {
          t.type = TrigTerm::Kind::sin;
        } else {
          throw SpecParseError(tpath + "type", 0, "expected \"cos\" or \"sin\"");
        }
        t.freq = int_array<2>(term, "freq", tpath, false);
        trig.push_back(t);
      }
    }
    if (spec.chart == Chart::sphere) {
      spec.sphere_components.push_back(std::move(mono));
    } else {
      spec.torus_components.push_back(std::move(trig));
    }
  }
  return spec;
}

std::string serialize_spec(const ImmersionSpec& spec) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"name\": " << json(spec.name).dump() << ",\n";
  os << "  \"chart\": \"" << to_string(spec.chart) << "\",\n";
  os << "  \"ambient_dim\": " << spec.ambient_dim << ",\n";
  os << "  \"euler_char\": " << spec.euler_char << ",\n";
  os << "  \"components\": [";
  const std::size_t n = spec.chart == Chart::sphere ? spec.sphere_components.size()
                                                    : spec.torus_components.size();
  for (std::size_t i = 0; i < n; ++i) {
    os << (i ? ",\n" : "\n") << "    [";
    if (spec.chart == Chart::sphere) {
      const auto& comp = spec.sphere_components[i];
      for (std::size_t k = 0; k < comp.size(); ++k) {
        const auto& t = comp[k];
        os << (k ? ",\n" : "\n") << "      {\"coeff\": " << num(t.coeff) << ", \"exps\": [" << t.exps[0]
           << ", " << t.exps[1] << ", " << t.exps[2] << "]}";
      }
      os << (comp.empty() ? "]" : "\n    ]");
    } else {
      const auto& comp = spec.torus_components[i];
      for (std::size_t k = 0; k < comp.size(); ++k) {
        const auto& t = comp[k];
        os << (k ? ",\n" : "\n") << "      {\"coeff\": " << num(t.coeff) << ", \"type\": \""
           << (t.type == TrigTerm::Kind::cos ? "cos" : "sin") << "\", \"freq\": [" << t.freq[0] << ", "
           << t.freq[1] << "]}";
      }
      os << (comp.empty() ? "]" : "\n    ]");
    }
  }
  os << (n ? "\n  ]\n" : "]\n") << "}\n";
  return os.str();
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"equator", "veronese", "calabi3", "calabi4", "clifford"};
  return names;
}

ImmersionSpec catalog_entry(const std::string& name) {
  if (name == "equator") {
    // Degree-1 harmonics are the coordinate functions; a zero fourth
    // component places the great sphere in S^3 so that q = 1.
    ImmersionSpec spec = calabi(name, 1);
    spec.sphere_components.emplace_back();
    spec.ambient_dim = 4;
    return spec;
  }
  if (name == "veronese") return calabi(name, 2);
  if (name == "calabi3") return calabi(name, 3);
  if (name == "calabi4") return calabi(name, 4);
  if (name == "clifford") {
    ImmersionSpec spec;
    spec.name = name;
    spec.chart = Chart::torus;
    spec.ambient_dim = 4;
    spec.euler_char = 0;
    const double r = std::sqrt(0.5);
    using K = TrigTerm::Kind;
    spec.torus_components = {{{r, K::cos, {1, 0}}},
                             {{r, K::sin, {1, 0}}},
                             {{r, K::cos, {0, 1}}},
                             {{r, K::sin, {0, 1}}}};
    return spec;
  }
  throw std::invalid_argument("unknown catalog surface '" + name + "'");
}

std::vector<double> evaluate_immersion(const ImmersionSpec& spec, ChartPoint p) {
  const auto s = immersion_series<0>(spec, p, 0.0);
  const Eigen::VectorXd v = s.value();
  return {v.data(), v.data() + v.size()};
}

ValidationReport validate(const ImmersionSpec& spec, const ValidationOptions& opts) {
  ValidationReport rep;
  const int n = opts.grid;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ChartPoint p;
      if (spec.chart == Chart::sphere) {
        p = {std::numbers::pi * (i + 0.5) / n, 2 * std::numbers::pi * j / n};
      } else {
        p = {2 * std::numbers::pi * i / n, 2 * std::numbers::pi * j / n};
      }
      const Jet jet = eval_jet(spec, p, 2);
      rep.max_norm_residual = std::max(rep.max_norm_residual, std::abs(jet.value().squaredNorm() - 1.0));
      const ChartGeometry cg = chart_geometry(jet);
      rep.max_mean_curvature = std::max(rep.max_mean_curvature, 0.5 * cg.mean_curvature().norm());
      ++rep.samples;
    }
  }
  return rep;
}

ImmersionSpec load_immersion(const std::string& source, const ValidationOptions& opts) {
  ImmersionSpec spec;
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) {
    spec = catalog_entry(source);
  } else {
    std::ifstream in(source);
    if (!in) throw SpecParseError("", 0, "cannot read spec file '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    spec = parse_spec(buf.str());
  }
  const ValidationReport rep = validate(spec, opts);
  if (rep.max_norm_residual > opts.norm_tol) {
    throw SpecRejected("surface '" + spec.name + "' rejected: image leaves the unit sphere, max | |X|^2 - 1 | = " +
                           num(rep.max_norm_residual),
                       rep);
  }
  if (rep.max_mean_curvature > opts.minimality_tol) {
    throw SpecRejected("surface '" + spec.name + "' rejected: not minimal, max |H| = " + num(rep.max_mean_curvature),
                       rep);
  }
  return spec;
}

}  // namespace mgl
