#include "mgl/gaps.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

using namespace mgl;

namespace {

const CertificateEntry& entry(const GapCertificate& c, const std::string& theorem) {
  for (const auto& e : c.entries)
    if (e.theorem == theorem) return e;
  FAIL("no entry " << theorem);
  throw std::logic_error("unreachable");
}

GapCertificate certify_catalog(const std::string& name) {
  const ImmersionSpec spec = load_immersion(name);
  const QuadratureGrid grid = build_grid(spec, 32, 64);
  const auto samples = sample_surface(spec, grid);
  return certify(spec, samples, integral_report(spec, grid, samples));
}

// Hand-built field extremes for hypotheses no catalog surface reaches.
FieldExtremes synthetic(double S_min, double S_max, double u_min, double u_max, double gamma2) {
  FieldExtremes ex;
  ex.S = {S_min, S_max};
  ex.u = {u_min, u_max};
  ex.rho_perp = {0.01, 0.2};
  ex.t = {0.3, 0.9};
  ex.K = {(2 - S_max) / 2, (2 - S_min) / 2};
  ex.gamma5_1 = 1e9;
  ex.gamma5_2 = gamma2;
  return ex;
}

ImmersionSpec torus_spec() { return catalog_entry("clifford"); }

IntegralReport report_with_area(double area) {
  IntegralReport ir;
  ir.area = area;
  ir.bound_445 = 2;
  return ir;
}

}  // namespace

TEST_CASE("Calabi constants") {
  const CalabiConstants c1 = calabi_constants(1), c2 = calabi_constants(2), c3 = calabi_constants(3);
  CHECK(c1.K == 1);
  CHECK(c1.S == 0);
  CHECK(c2.K_exact == Rational(1, 3));
  CHECK(c2.S_exact == Rational(4, 3));
  CHECK(c2.u_exact == 2);
  CHECK(c2.ambient_dim == 4);
  CHECK(c3.K_exact == Rational(1, 6));
  CHECK(c3.S_exact == Rational(5, 3));
  CHECK(c3.u_exact == Rational(5, 2));
  CHECK(std::abs(c3.area - 24 * std::numbers::pi) < 1e-12);
  for (int s = 1; s < 30; ++s) {
    CHECK(calabi_constants(s + 1).K < calabi_constants(s).K);
    CHECK(calabi_constants(s + 1).S > calabi_constants(s).S);
  }
  CHECK(calabi_constants(2, 2.0).K == doctest::Approx(1.0 / 12));
  CHECK_THROWS_AS(calabi_constants(0), std::invalid_argument);
}

TEST_CASE("threshold endpoints") {
  const ThresholdValues one = threshold_T(1.0);
  CHECK(std::abs(one.That_A - 20.0 / 9) < 1e-12);
  CHECK(std::abs(one.That_B - 2.0) < 1e-12);
  const double ts = tau_star();
  CHECK(std::abs(ts - std::sqrt(9 + 3 * std::sqrt(5.0)) / 4) < 1e-16);
  const ThresholdValues star = threshold_T(ts);
  const double endpoint = (30 + 2 * std::sqrt(5.0)) / 11 -
                          (15 + std::sqrt(5.0)) * std::sqrt(9 + 3 * std::sqrt(5.0)) / 66;
  CHECK(std::abs(star.That_A - star.That_B) < 1e-10);
  CHECK(std::abs(star.That_A - endpoint) < 1e-12);
  CHECK(star.sigma == 0);
  CHECK(threshold_T(0.991).sigma > 0.02);
}

TEST_CASE("threshold domain errors name the discriminant") {
  try {
    threshold_T(0.9);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("discriminant") != std::string::npos);
  }
  CHECK_THROWS_AS(threshold_T(1.0 + 1e-12), DomainError);
  CHECK_THROWS_AS(threshold_T(std::nan("")), DomainError);
  CHECK_THROWS_AS(threshold_table(0.9, 1.0, 10), DomainError);
}

TEST_CASE("threshold table on a 10^4 grid") {
  const auto table = threshold_table(tau_star(), 1.0, 10000);
  REQUIRE(table.size() == 10000);
  CHECK(table.front().tau == tau_star());
  CHECK(table.back().tau == 1.0);
  CHECK(check_threshold_table(table).empty());
  for (std::size_t i = 1; i < table.size(); ++i) {
    CHECK(table[i].That_A - table[i - 1].That_A >= -1e-12);
    CHECK(table[i].That_B - table[i - 1].That_B <= 1e-12);
    CHECK(table[i].sigma > 0);
  }
}

TEST_CASE("threshold check catches a broken table") {
  auto table = threshold_table(tau_star(), 1.0, 50);
  std::swap(table[10].That_A, table[30].That_A);
  CHECK_FALSE(check_threshold_table(table).empty());
}

TEST_CASE("factorization link: T_A and T_B are roots of the pinching cubic") {
  for (const auto& row : threshold_table(tau_star(), 1.0, 500)) {
    for (double S : {row.T_A, row.T_B}) {
      const double t = row.tau;
      const double poly = S * (3 * S - 4) * (3 * S - 5) + 0.5 * (16 - 9 * S) * t * t * S * S;
      CHECK(std::abs(poly) < 1e-9);
    }
  }
}

TEST_CASE("pinching roots") {
  const PinchingRoots g0 = pinching_roots(0);
  CHECK(std::abs(g0.S0 - 20.0 / 9) < 1e-12);
  CHECK(g0.S0_prime == 0);
  const PinchingRoots g4 = pinching_roots(4);
  CHECK(std::abs(g4.S0 - 2) < 1e-12);
  CHECK(std::abs(pinching_roots(2.0 / 3).gamma_bound - 2) < 1e-15);
  CHECK_THROWS_AS(pinching_roots(-0.1), DomainError);
  CHECK_THROWS_AS(pinching_roots(4.5), DomainError);
  const auto table = gamma_table(0, 4, 1000);
  CHECK(check_gamma_table(table).empty());
  for (const auto& r : table) {
    CHECK(r.S0 >= 2 - 1e-12);
    CHECK(r.S0_prime <= 0);
    if (r.gamma > 0) CHECK(r.S0_prime < 0);
    CHECK(std::abs(9 * r.S0 * r.S0 + (4.5 * r.gamma - 20) * r.S0 - 8 * r.gamma) < 1e-10);
  }
  CHECK(table.back().S0 == doctest::Approx(2).epsilon(1e-14));
}

TEST_CASE("CSV tables") {
  const auto tau = threshold_table(tau_star(), 1.0, 3);
  const std::string csv = threshold_csv(tau);
  CHECK(csv.rfind("tau,T_A,T_B,That_A,That_B,sigma\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.find("\n1,2.2222222222222223,2,2.2222222222222223,2,0.22222222222222246\n") != std::string::npos);
  const std::string g = gamma_csv(gamma_table(0, 4, 2));
  CHECK(g == "gamma,S0,S0_prime,gamma_bound\n0,2.2222222222222223,0,2.2222222222222223\n4,2,-1.7777777777777777,1.6296296296296295\n");
}

TEST_CASE("constancy") {
  CHECK(is_constant({2.0, 2.0 + 1e-9}));
  CHECK_FALSE(is_constant({2.0, 2.0 + 1e-7}));
  CHECK(is_constant({0.0, 0.5e-8}));
}

TEST_CASE("catalog certificates") {
  const GapCertificate c3 = certify_catalog("calabi3");
  CHECK_FALSE(c3.violated());
  CHECK(entry(c3, "main1(1)").hypothesis_holds);
  CHECK(entry(c3, "main1(1)").verdict == CertVerdict::consistent);
  CHECK(entry(c3, "main1(2)").verdict == CertVerdict::consistent);
  CHECK(std::abs(entry(c3, "main1(2)").margin) < 1e-8);
  CHECK(entry(c3, "main1(2)").note.find("equality") != std::string::npos);
  CHECK(entry(c3, "simongap2").verdict == CertVerdict::consistent);
  CHECK(entry(c3, "lemma_ab").verdict == CertVerdict::consistent);
  CHECK(entry(c3, "main4").verdict == CertVerdict::inapplicable);

  const GapCertificate cl = certify_catalog("clifford");
  CHECK_FALSE(cl.violated());
  CHECK(entry(cl, "main5(1)").hypothesis_holds);
  CHECK(entry(cl, "main5(1)").verdict == CertVerdict::consistent);
  CHECK(entry(cl, "main6(2)-flat").verdict == CertVerdict::inapplicable);
  CHECK(entry(cl, "main4").verdict == CertVerdict::consistent);
  CHECK(entry(cl, "main4.5").verdict == CertVerdict::consistent);
  CHECK(std::abs(entry(cl, "main4.5").margin) < 1e-8);
  CHECK(entry(cl, "lemma_ab").verdict == CertVerdict::inapplicable);
  CHECK(entry(cl, "bryant").verdict == CertVerdict::inapplicable);

  const GapCertificate v = certify_catalog("veronese");
  CHECK_FALSE(v.violated());
  CHECK(entry(v, "main4").verdict == CertVerdict::inapplicable);
  CHECK(entry(v, "main4.5").verdict == CertVerdict::inapplicable);
  CHECK(entry(v, "simongap2").hypothesis_holds);
  CHECK(entry(v, "simongap2").verdict == CertVerdict::consistent);
  CHECK(entry(v, "main1(2)").verdict == CertVerdict::inapplicable);
  CHECK(entry(v, "main6(1)").verdict == CertVerdict::consistent);

  for (const char* name : {"equator", "calabi4"}) CHECK_FALSE(certify_catalog(name).violated());
  const GapCertificate lawson = certify_catalog(MGL_DATA_DIR "/lawson_tau21.json");
  CHECK_FALSE(lawson.violated());
  CHECK(entry(lawson, "main4").verdict == CertVerdict::consistent);
}

TEST_CASE("main5(2) on synthetic fields") {
  const ImmersionSpec torus = torus_spec();
  const IntegralReport ir = report_with_area(40);
  // gamma = 1/2 gives (40 + 6) / (18 + 4.5) = 2.0444...
  GapCertificate ok = certify(torus, synthetic(2.05, 2.4, 2.3, 2.6, 0.5), ir);
  const CertificateEntry& e = entry(ok, "main5(2)");
  CHECK(e.hypothesis_holds);
  CHECK(e.verdict == CertVerdict::consistent);
  CHECK(e.bound == doctest::Approx(46.0 / 22.5));
  CHECK(e.note.find("synthetic-only coverage") != std::string::npos);

  // Conclusion fails when max S stays below the bound.
  GapCertificate bad = certify(torus, synthetic(2.0, 2.02, 2.3, 2.6, 0.5), ir);
  CHECK(entry(bad, "main5(2)").verdict == CertVerdict::violated);
  CHECK(bad.violated());
  try {
    require_consistent(bad);
    FAIL("expected CertificateViolation");
  } catch (const CertificateViolation& ex) {
    const std::string what = ex.what();
    CHECK(what.find("main5(2)") != std::string::npos);
    CHECK(what.find("extremes") != std::string::npos);
  }

  // Hypothesis off: gamma too large, or u not above 2.
  CHECK(entry(certify(torus, synthetic(2.0, 2.02, 2.3, 2.6, 0.7), ir), "main5(2)").verdict ==
        CertVerdict::inapplicable);
  CHECK(entry(certify(torus, synthetic(2.0, 2.02, 2.0, 2.6, 0.1), ir), "main5(2)").verdict ==
        CertVerdict::inapplicable);

  // Random fields: the verdict agrees with a direct evaluation.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0, 1);
  int held = 0;
  for (int k = 0; k < 2000; ++k) {
    const double S_max = 1.9 + 0.6 * U(rng), S_min = S_max - 0.3 * U(rng);
    const double u_min = 1.9 + 0.5 * U(rng), u_max = u_min + 0.5 * U(rng);
    const double gamma = U(rng);
    const CertificateEntry r = entry(certify(torus, synthetic(S_min, S_max, u_min, u_max, gamma), ir), "main5(2)");
    const bool hyp = u_min > 2 + 3e-8 && gamma <= 2.0 / 3;
    if (std::abs(u_min - 2) > 1e-6) CHECK(r.hypothesis_holds == hyp);
    if (!r.hypothesis_holds) {
      CHECK(r.verdict == CertVerdict::inapplicable);
      continue;
    }
    ++held;
    const double bound = (40 + 12 * gamma) / (18 + 9 * gamma);
    const bool conclusion = u_max >= S_max - 1e-6 && S_max > bound - 1e-6;
    CHECK(r.verdict == (conclusion ? CertVerdict::consistent : CertVerdict::violated));
  }
  CHECK(held > 100);
}

TEST_CASE("Bryant exclusion and main6 branches on synthetic fields") {
  const ImmersionSpec torus = torus_spec();
  FieldExtremes ex = synthetic(2.5, 2.5, 2.5, 2.5, 10);
  const GapCertificate c = certify(torus, ex, report_with_area(30));
  CHECK(entry(c, "bryant").verdict == CertVerdict::violated);

  // Flat normal bundle with u > 2 but max u below 20/9.
  FieldExtremes flat = synthetic(2.05, 2.1, 2.05, 2.1, 0);
  flat.rho_perp = {0, 0};
  flat.t = {1, 1};
  const GapCertificate f = certify(torus, flat, report_with_area(30));
  CHECK(entry(f, "main6(2)-flat").hypothesis_holds);
  CHECK(entry(f, "main6(2)-flat").verdict == CertVerdict::violated);
  CHECK(entry(f, "main6(2)").hypothesis_holds);
  CHECK(entry(f, "main6(2)").verdict == CertVerdict::violated);

  // main6(2) needs min t >= tau*.
  FieldExtremes low = synthetic(2.3, 2.4, 2.3, 2.4, 0);
  low.t = {0.5, 0.9};
  CHECK(entry(certify(torus, low, report_with_area(30)), "main6(2)").verdict == CertVerdict::inapplicable);

  // main6(1): bound (3 - tau)(1 - 2 pi chi / Area) with chi = 0.
  FieldExtremes m = synthetic(2.0, 2.0, 2.0, 2.0, 0);
  m.t = {1, 1};
  CHECK(entry(certify(torus, m, report_with_area(30)), "main6(1)").verdict == CertVerdict::consistent);
  m.u = {1.5, 1.9};
  CHECK(entry(certify(torus, m, report_with_area(30)), "main6(1)").verdict == CertVerdict::violated);
}

TEST_CASE("field extremes and gamma ratios") {
  std::vector<NodeSample> samples(3);
  samples[0].inv.S = 2.2;
  samples[0].inv.u = 2.4;
  samples[0].inv.K = -0.1;
  samples[0].inv.rho_perp = 0.1;
  samples[1].inv.S = 2.1;
  samples[1].inv.u = 2.2;
  samples[1].inv.K = -0.05;
  samples[1].inv.rho_perp = 0;
  samples[2].inv.S = 2.0;
  samples[2].inv.u = 2.0;
  samples[2].inv.K = 0;
  samples[2].inv.rho_perp = 0;
  const FieldExtremes ex = field_extremes(samples);
  CHECK(ex.S.min == 2.0);
  CHECK(ex.S.max == 2.2);
  CHECK(ex.gamma5_1 == doctest::Approx(4 * 0.01 / 0.1));
  CHECK(ex.gamma5_2 == doctest::Approx(4 * 0.01 / (0.4 * 2.2)));
  samples[2].inv.rho_perp = 0.1;  // rho_perp > 0 where K = 0 and u = 2
  const FieldExtremes ex2 = field_extremes(samples);
  CHECK(std::isinf(ex2.gamma5_1));
  CHECK(std::isinf(ex2.gamma5_2));
}
