#include "mgl/gaps.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace mgl {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const double kSqrt5 = std::sqrt(5.0);

}  // namespace

CalabiConstants calabi_constants(int s, double r) {
  if (s < 1 || !(r > 0)) throw std::invalid_argument("calabi_constants needs s >= 1 and r > 0");
  CalabiConstants c;
  c.s = s;
  c.r = r;
  c.K = 2.0 / (s * (s + 1.0) * r * r);
  c.S = 2 - 2 * c.K;
  c.u = 1.5 * c.S;
  c.ambient_dim = 2 * s;
  c.area = 2 * std::numbers::pi * s * (s + 1.0) * r * r;
  c.K_exact = Rational(2, s * (s + 1));
  c.K_exact.canonicalize();
  c.S_exact = 2 - 2 * c.K_exact;
  c.u_exact = Rational(3, 2) * c.S_exact;
  return c;
}

double tau_star() { return std::sqrt(9 + 3 * kSqrt5) / 4; }

ThresholdValues threshold_T(double tau) {
  const double ts = tau_star();
  if (!(tau >= ts && tau <= 1.0)) {
    std::ostringstream os;
    os << "tau = " << num(tau) << " outside [" << num(ts) << ", 1]";
    if (tau < ts) os << ": the discriminant (8 tau^2 - 9/2)^2 - 45/4 is negative";
    throw DomainError(os.str());
  }
  ThresholdValues v;
  v.tau = tau;
  const double t2 = tau * tau;
  // (8 tau^2 - 9/2)^2 - 45/4 factored so that it vanishes exactly at tau*.
  const double D = std::max(0.0, 8 * (tau - ts) * (tau + ts) * (8 * t2 - 4.5 + 1.5 * kSqrt5));
  const double root = std::sqrt(D);
  const double den = 18 - 9 * t2;
  v.T_A = (27 - 8 * t2 + root) / den;
  v.T_B = (27 - 8 * t2 - root) / den;
  v.That_A = (3 - tau) / 2 * v.T_A;
  v.That_B = (3 - tau) / 2 * v.T_B;
  v.sigma = (3 - tau) * root / den;
  return v;
}

PinchingRoots pinching_roots(double gamma) {
  if (!(gamma >= 0 && gamma <= 4)) throw DomainError("gamma = " + num(gamma) + " outside [0, 4]");
  PinchingRoots p;
  p.gamma = gamma;
  p.S0 = (40 - 9 * gamma + std::sqrt(81 * gamma * gamma + 432 * gamma + 1600)) / 36;
  // Product of the roots is -8 gamma / 9; avoids cancellation in the small root.
  p.S0_prime = (-8 * gamma / 9) / p.S0 + 0.0;  // + 0.0 folds -0
  p.gamma_bound = (40 + 12 * gamma) / (18 + 9 * gamma);
  return p;
}

std::vector<ThresholdValues> threshold_table(double tau_lo, double tau_hi, int points) {
  if (points < 2) throw std::invalid_argument("threshold table needs at least 2 points");
  std::vector<ThresholdValues> out;
  for (int i = 0; i < points; ++i) {
    const double tau = i == points - 1 ? tau_hi : tau_lo + (tau_hi - tau_lo) * i / (points - 1);
    out.push_back(threshold_T(tau));
  }
  return out;
}

std::vector<PinchingRoots> gamma_table(double gamma_lo, double gamma_hi, int points) {
  if (points < 2) throw std::invalid_argument("gamma table needs at least 2 points");
  std::vector<PinchingRoots> out;
  for (int i = 0; i < points; ++i) {
    const double g = i == points - 1 ? gamma_hi : gamma_lo + (gamma_hi - gamma_lo) * i / (points - 1);
    out.push_back(pinching_roots(g));
  }
  return out;
}

std::vector<std::string> check_threshold_table(const std::vector<ThresholdValues>& table) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& r = table[i];
    if (r.sigma < -1e-12) bad.push_back("sigma negative at tau = " + num(r.tau));
    if (std::abs(r.sigma - (r.That_A - r.That_B)) > 1e-12)
      bad.push_back("sigma differs from That_A - That_B at tau = " + num(r.tau));
    if (i == 0) continue;
    const auto& p = table[i - 1];
    if (r.That_A - p.That_A < -1e-12) bad.push_back("That_A decreases at tau = " + num(r.tau));
    if (r.That_B - p.That_B > 1e-12) bad.push_back("That_B increases at tau = " + num(r.tau));
  }
  if (!table.empty()) {
    const auto& first = table.front();
    if (first.tau == tau_star() && std::abs(first.That_A - first.That_B) > 1e-10)
      bad.push_back("That_A(tau*) != That_B(tau*)");
    const auto& last = table.back();
    if (last.tau == 1.0) {
      if (std::abs(last.That_A - 20.0 / 9) > 1e-12) bad.push_back("That_A(1) != 20/9");
      if (std::abs(last.That_B - 2.0) > 1e-12) bad.push_back("That_B(1) != 2");
    }
  }
  return bad;
}

std::vector<std::string> check_gamma_table(const std::vector<PinchingRoots>& table) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& r = table[i];
    const double g = r.gamma;
    auto residual = [&](double S) { return 9 * S * S + (4.5 * g - 20) * S - 8 * g; };
    if (std::abs(residual(r.S0)) > 1e-10 || std::abs(residual(r.S0_prime)) > 1e-10)
      bad.push_back("root residual above 1e-10 at gamma = " + num(g));
    if (r.S0 < 2 - 1e-12 || r.S0_prime > 0) bad.push_back("root ordering S0 >= 2 >= 0 >= S0' fails at gamma = " + num(g));
    if (i > 0 && r.S0 - table[i - 1].S0 > 1e-12) bad.push_back("S0 increases at gamma = " + num(g));
  }
  if (!table.empty()) {
    if (table.front().gamma == 0 && std::abs(table.front().S0 - 20.0 / 9) > 1e-12) bad.push_back("S0(0) != 20/9");
    if (table.back().gamma == 4 && std::abs(table.back().S0 - 2.0) > 1e-12) bad.push_back("S0(4) != 2");
  }
  return bad;
}

std::string threshold_csv(const std::vector<ThresholdValues>& table) {
  std::string out = "tau,T_A,T_B,That_A,That_B,sigma\n";
  for (const auto& r : table)
    out += num(r.tau) + "," + num(r.T_A) + "," + num(r.T_B) + "," + num(r.That_A) + "," + num(r.That_B) + "," +
           num(r.sigma) + "\n";
  return out;
}

std::string gamma_csv(const std::vector<PinchingRoots>& table) {
  std::string out = "gamma,S0,S0_prime,gamma_bound\n";
  for (const auto& r : table)
    out += num(r.gamma) + "," + num(r.S0) + "," + num(r.S0_prime) + "," + num(r.gamma_bound) + "\n";
  return out;
}

FieldExtremes field_extremes(const std::vector<NodeSample>& samples) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  FieldExtremes ex;
  for (Range* r : {&ex.S, &ex.u, &ex.rho_perp, &ex.t, &ex.K}) *r = {inf, -inf};
  auto grow = [](Range& r, double x) {
    r.min = std::min(r.min, x);
    r.max = std::max(r.max, x);
  };
  for (const auto& s : samples) {
    const auto& p = s.inv;
    grow(ex.S, p.S);
    grow(ex.u, p.u);
    grow(ex.rho_perp, p.rho_perp);
    grow(ex.t, p.t);
    grow(ex.K, p.K);
    ex.max_lambda_gap = std::max(ex.max_lambda_gap, std::abs(p.lambda1 - p.lambda2));
    ex.max_hopf = std::max({ex.max_hopf, std::abs(p.hopf_re), std::abs(p.hopf_im)});
    const double num4 = 4 * p.rho_perp * p.rho_perp;
    if (num4 > 1e-16) {
      ex.gamma5_1 = std::max(ex.gamma5_1, std::abs(p.K) > 1e-14 ? num4 / std::abs(p.K) : inf);
      const double den = (p.u - 2) * p.S;
      ex.gamma5_2 = std::max(ex.gamma5_2, den > 0 ? num4 / den : inf);
    }
  }
  return ex;
}

const char* to_string(CertVerdict v) {
  switch (v) {
    case CertVerdict::consistent: return "consistent";
    case CertVerdict::violated: return "violated";
    default: return "inapplicable";
  }
}

bool GapCertificate::violated() const {
  for (const auto& e : entries)
    if (e.verdict == CertVerdict::violated) return true;
  return false;
}

bool is_constant(const Range& r, double rel) {
  return r.spread() < rel * (1 + std::max(std::abs(r.min), std::abs(r.max)));
}

GapCertificate certify(const ImmersionSpec& spec, const FieldExtremes& ex, const IntegralReport& ir,
                       const CertifyOptions& opts) {
  GapCertificate cert;
  cert.surface = spec.name;
  cert.extremes = ex;
  const double tol = opts.conclusion_tol;
  const bool sphere = spec.chart == Chart::sphere && spec.euler_char == 2;
  auto strictly_above = [&](double x, double bound) { return x > bound + opts.constancy_rel * (1 + std::abs(bound)); };
  auto settle = [&](CertificateEntry& e, bool holds) {
    e.verdict = !e.hypothesis_holds ? CertVerdict::inapplicable
                                    : (holds ? CertVerdict::consistent : CertVerdict::violated);
    cert.entries.push_back(e);
  };

  {
    CertificateEntry e;
    e.theorem = "main1(1)";
    e.hypothesis = "2-sphere with S + lambda2 constant";
    e.conclusion = "K constant and S = 2 - 4/(s(s+1)) for some s (Calabi sphere)";
    e.hypothesis_holds = sphere && is_constant(ex.u, opts.constancy_rel);
    const double S = 0.5 * (ex.S.min + ex.S.max);
    int best = 1;
    for (int s = 1; s <= 1000; ++s)
      if (std::abs(S - calabi_constants(s).S) < std::abs(S - calabi_constants(best).S)) best = s;
    e.measured = S;
    e.bound = calabi_constants(best).S;
    e.margin = -std::abs(S - e.bound);
    if (sphere) e.note = "nearest Calabi index s = " + std::to_string(best);
    settle(e, is_constant(ex.K, opts.constancy_rel) && std::abs(S - e.bound) <= tol);
  }
  {
    CertificateEntry e;
    e.theorem = "lemma_ab";
    e.hypothesis = "2-sphere";
    e.conclusion = "|a|^2 = |b|^2, <a,b> = 0 and lambda1 = lambda2 = S/2 pointwise";
    e.hypothesis_holds = sphere;
    e.measured = std::max(ex.max_hopf, ex.max_lambda_gap);
    e.bound = 0;
    e.margin = -e.measured;
    e.note = "max |hopf| = " + num(ex.max_hopf) + ", max |lambda1 - lambda2| = " + num(ex.max_lambda_gap);
    settle(e, e.measured <= 1e-8);
  }
  {
    CertificateEntry e;
    e.theorem = "simongap2";
    e.hypothesis = "2-sphere with 4/3 <= S <= 5/3";
    e.conclusion = "S = 4/3 or S = 5/3 identically";
    e.hypothesis_holds = sphere && ex.S.min >= 4.0 / 3 - tol && ex.S.max <= 5.0 / 3 + tol;
    const double S = 0.5 * (ex.S.min + ex.S.max);
    e.measured = S;
    e.bound = std::abs(S - 4.0 / 3) <= std::abs(S - 5.0 / 3) ? 4.0 / 3 : 5.0 / 3;
    e.margin = -std::max(std::abs(S - e.bound), ex.S.spread());
    settle(e, is_constant(ex.S, opts.constancy_rel) && std::abs(S - e.bound) <= tol);
  }
  {
    CertificateEntry e;
    e.theorem = "main1(2)";
    e.hypothesis = "2-sphere with S + lambda2 > 2";
    e.conclusion = "max (S + lambda2) >= 5/2";
    e.hypothesis_holds = sphere && strictly_above(ex.u.min, 2);
    e.measured = ex.u.max;
    e.bound = 2.5;
    e.margin = ex.u.max - 2.5;
    bool holds = e.margin >= -tol;
    if (e.hypothesis_holds && std::abs(e.margin) <= tol) {
      // Equality forces q = 4 and K = 1/6.
      const bool calabi3 = spec.codimension() == 4 && std::abs(ex.K.max - 1.0 / 6) <= tol &&
                           std::abs(ex.K.min - 1.0 / 6) <= tol;
      e.note = calabi3 ? "equality case attained: q = 4, K = 1/6" : "equality without q = 4, K = 1/6";
      holds = holds && calabi3;
    }
    settle(e, holds);
  }
  {
    CertificateEntry e;
    e.theorem = "main4";
    e.hypothesis = "universal cover is not a 2-sphere";
    e.conclusion =
        "max (S + lambda2) >= 8/3, or max (S + lambda2) >= 3 - sqrt(1 - min rho_perp^2) with min rho_perp <= 1";
    e.hypothesis_holds = !sphere;
    const double m1 = ex.u.max - 8.0 / 3;
    double m2 = -std::numeric_limits<double>::infinity();
    double b2 = std::numeric_limits<double>::infinity();
    if (ex.rho_perp.min <= 1) {
      b2 = 3 - std::sqrt(1 - ex.rho_perp.min * ex.rho_perp.min);
      m2 = ex.u.max - b2;
    }
    e.measured = ex.u.max;
    e.bound = std::min(8.0 / 3, b2);
    e.margin = std::max(m1, m2);
    settle(e, e.margin >= -tol);
  }
  {
    CertificateEntry e;
    e.theorem = "main4.5";
    e.hypothesis = "universal cover is not a 2-sphere";
    e.conclusion = "max (S + lambda2) >= 1 + sqrt(1 + (1/Area) int rho_perp^2)";
    e.hypothesis_holds = !sphere;
    e.measured = ex.u.max;
    e.bound = ir.bound_445;
    e.margin = ex.u.max - ir.bound_445;
    settle(e, e.margin >= -tol);
  }
  {
    CertificateEntry e;
    e.theorem = "main5(1)";
    e.hypothesis = "rho_perp <= sqrt(gamma |K|)/2 with gamma <= 4, and 2 <= S <= S0(gamma)";
    e.conclusion = "S = 2 identically and K = 0 (Clifford torus)";
    const double gamma = ex.gamma5_1;
    e.hypothesis_holds = false;
    if (gamma <= 4) {
      const PinchingRoots pr = pinching_roots(gamma);
      e.bound = pr.S0;
      e.hypothesis_holds = ex.S.min >= 2 - tol && ex.S.max <= pr.S0 + tol;
      e.note = "gamma = " + num(gamma);
    } else {
      e.note = "no gamma in [0, 4] satisfies the normal curvature bound";
    }
    const double dev = std::max({std::abs(ex.S.max - 2), std::abs(ex.S.min - 2), std::abs(ex.K.max),
                                 std::abs(ex.K.min)});
    e.measured = ex.S.max;
    e.margin = -dev;
    settle(e, dev <= tol);
  }
  {
    CertificateEntry e;
    e.theorem = "main5(2)";
    e.hypothesis = "S + lambda2 > 2 and rho_perp <= sqrt((S + lambda2 - 2) gamma S)/2 with gamma <= 2/3";
    e.conclusion = "max (S + lambda2) >= max S > (40 + 12 gamma)/(18 + 9 gamma)";
    const double gamma = ex.gamma5_2;
    e.hypothesis_holds = strictly_above(ex.u.min, 2) && gamma <= 2.0 / 3;
    e.measured = ex.S.max;
    e.bound = gamma <= 4 ? pinching_roots(gamma).gamma_bound : std::numeric_limits<double>::quiet_NaN();
    e.margin = std::min(ex.S.max - e.bound, ex.u.max - ex.S.max);
    e.note = "synthetic-only coverage; gamma = " + num(gamma);
    settle(e, ex.u.max >= ex.S.max - tol && ex.S.max > e.bound - tol);
  }
  {
    CertificateEntry e;
    e.theorem = "main6(1)";
    const double tau = std::clamp(ex.t.max, 0.0, 1.0);
    e.hypothesis = "rho_perp >= sqrt(1 - tau^2) S / 2 with tau = max t";
    e.conclusion = "max (S + lambda2) >= (3 - tau)(1 - 2 pi chi / Area)";
    e.hypothesis_holds = true;
    e.measured = ex.u.max;
    e.bound = (3 - tau) * (1 - 2 * std::numbers::pi * spec.euler_char / ir.area);
    e.margin = ex.u.max - e.bound;
    e.note = "tau = " + num(tau);
    settle(e, e.margin >= -tol);
  }
  {
    CertificateEntry e;
    e.theorem = "main6(2)";
    const double tau = std::min(ex.t.min, 1.0);
    e.hypothesis = "rho_perp <= sqrt(1 - tau^2) S / 2 with tau = min t in [tau*, 1], and S + lambda2 > That_B(tau)";
    e.conclusion = "max (S + lambda2) >= That_A(tau)";
    e.note = "tau = " + num(tau);
    if (tau >= tau_star()) {
      const ThresholdValues tv = threshold_T(tau);
      e.hypothesis_holds = strictly_above(ex.u.min, tv.That_B);
      e.bound = tv.That_A;
    } else {
      e.note += " below tau*";
      e.bound = std::numeric_limits<double>::quiet_NaN();
    }
    e.measured = ex.u.max;
    e.margin = ex.u.max - e.bound;
    settle(e, e.margin >= -tol);
  }
  {
    CertificateEntry e;
    e.theorem = "main6(2)-flat";
    e.hypothesis = "flat normal bundle (max rho_perp < 1e-8) and S + lambda2 > 2";
    e.conclusion = "max (S + lambda2) > 20/9";
    e.hypothesis_holds = ex.rho_perp.max < opts.flat_normal && strictly_above(ex.u.min, 2);
    e.measured = ex.u.max;
    e.bound = 20.0 / 9;
    e.margin = ex.u.max - e.bound;
    settle(e, e.margin > -tol);
  }
  {
    CertificateEntry e;
    e.theorem = "bryant";
    e.hypothesis = "S constant and S > 2";
    e.conclusion = "excluded: no minimal surface in a sphere has constant S > 2";
    e.hypothesis_holds = is_constant(ex.S, opts.constancy_rel) && strictly_above(ex.S.max, 2);
    e.measured = ex.S.max;
    e.bound = 2;
    e.margin = 2 - ex.S.max;
    settle(e, false);
  }
  return cert;
}

GapCertificate certify(const ImmersionSpec& spec, const std::vector<NodeSample>& samples,
                       const IntegralReport& ir, const CertifyOptions& opts) {
  return certify(spec, field_extremes(samples), ir, opts);
}

void require_consistent(const GapCertificate& cert) {
  if (!cert.violated()) return;
  std::ostringstream os;
  os << "certificate for '" << cert.surface << "' violated:";
  for (const auto& e : cert.entries)
    if (e.verdict == CertVerdict::violated)
      os << " [" << e.theorem << ": measured " << num(e.measured) << ", bound " << num(e.bound) << "]";
  const auto& x = cert.extremes;
  os << " extremes S [" << num(x.S.min) << ", " << num(x.S.max) << "] u [" << num(x.u.min) << ", "
     << num(x.u.max) << "] rho_perp [" << num(x.rho_perp.min) << ", " << num(x.rho_perp.max) << "]";
  throw CertificateViolation(os.str());
}

}  // namespace mgl
