#include "mgl/lemmas.hpp"

#include <chrono>
#include <random>
#include <set>

#include "doctest.h"

using mgl::IdentityReport;
using mgl::RatPoly;
using mgl::Rational;
using mgl::Verdict;

namespace {

using RVec = std::vector<Rational>;

Rational rdot(const RVec& x, const RVec& y) {
  Rational s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

RVec random_vec(std::mt19937_64& rng, int q) {
  RVec v(static_cast<std::size_t>(q));
  for (auto& x : v) x = random_rational(rng);
  return v;
}

void bind_family(std::map<std::string, Rational>& env, const std::string& family, const RVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) env[family + "[" + std::to_string(i + 1) + "]"] = v[i];
}

/// Exact determinant by fraction-based Gaussian elimination.
Rational gauss_det(std::vector<RVec> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

bool all_proved(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    if (r.verdict != Verdict::proved) {
      MESSAGE(r.group << "/" << r.name << " q=" << r.q << " residual " << r.residual.str());
      return false;
    }
  }
  return true;
}

const IdentityReport& find(const std::vector<IdentityReport>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("no identity " + name);
}

}  // namespace

TEST_CASE("symbol families instantiate q variables") {
  const mgl::SymbolFamily fam{"a1", 3};
  const auto names = fam.variable_names();
  REQUIRE(names.size() == 3);
  CHECK(names[0] == "a1[1]");
  CHECK(names[2] == "a1[3]");
}

TEST_CASE("invariant identities, codimension one") {
  const auto reports = mgl::check_invariant_identities(1);
  CHECK(reports.size() == 4);
  CHECK(all_proved(reports));
  // Commutators vanish: both sides of the rho0 expansion are identically zero.
  const auto& rho = find(reports, "rho0_commutator_expansion");
  CHECK(rho.lhs.is_zero());
  CHECK(rho.rhs.is_zero());
}

TEST_CASE("invariant identities, q = 3 and q = 6") {
  CHECK(all_proved(mgl::check_invariant_identities(3)));
  const auto start = std::chrono::steady_clock::now();
  CHECK(all_proved(mgl::check_invariant_identities(6)));
  CHECK(mgl::check_eigen_charpoly(6).verdict == Verdict::proved);
  CHECK(mgl::check_b2_decomposition(6).verdict == Verdict::proved);
  CHECK(all_proved(mgl::check_third_order_contractions(6)));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 5.0);
}

TEST_CASE("eigen charpoly at a=(1,0), b=(0,1) is (lambda-2)^2") {
  const RatPoly det = mgl::fundamental_charpoly(2);
  std::map<std::string, Rational> env;
  bind_family(env, "a", {Rational(1), Rational(0)});
  bind_family(env, "b", {Rational(0), Rational(1)});
  for (int l = -3; l <= 5; ++l) {
    env["lambda"] = Rational(l);
    CHECK(det.evaluate(env) == Rational((l - 2) * (l - 2)));
  }
  CHECK(mgl::check_eigen_charpoly(2).verdict == Verdict::proved);
}

TEST_CASE("eigen charpoly, rank-one case") {
  const auto r = mgl::check_eigen_charpoly(1);
  CHECK(r.verdict == Verdict::proved);
  // det(lambda - A) = lambda - S with S = 2(a^2 + b^2).
  std::map<std::string, Rational> env{{"a[1]", Rational(3)}, {"b[1]", Rational(1, 2)},
                                      {"lambda", Rational(0)}};
  CHECK(mgl::fundamental_charpoly(1).evaluate(env) == Rational(-18) - Rational(1, 2));
}

TEST_CASE("eigen charpoly q = 4 against exact Gaussian elimination") {
  CHECK(mgl::check_eigen_charpoly(4).verdict == Verdict::proved);
  const RatPoly det = mgl::fundamental_charpoly(4);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const RVec a = random_vec(rng, 4), b = random_vec(rng, 4);
    const Rational lambda = random_rational(rng);
    std::vector<RVec> m(4, RVec(4));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        m[i][j] = (i == j ? lambda : Rational(0)) - 2 * a[i] * a[j] - 2 * b[i] * b[j];
    std::map<std::string, Rational> env{{"lambda", lambda}};
    bind_family(env, "a", a);
    bind_family(env, "b", b);
    CHECK(det.evaluate(env) == gauss_det(m));
  }
}

TEST_CASE("B2 decomposition") {
  const auto r1 = mgl::check_b2_decomposition(1);
  CHECK(r1.verdict == Verdict::proved);
  // a = (alpha), b = 0: both sides are 2 alpha^2 (2 - 2 alpha^2)^2.
  for (int n = -4; n <= 4; ++n) {
    const Rational alpha(n, 3);
    std::map<std::string, Rational> env{{"a[1]", alpha}, {"b[1]", Rational(0)}};
    const Rational expected = 2 * alpha * alpha * (2 - 2 * alpha * alpha) * (2 - 2 * alpha * alpha);
    CHECK(r1.lhs.evaluate(env) == expected);
    CHECK(r1.rhs.evaluate(env) == expected);
  }
  CHECK(mgl::check_b2_decomposition(2).verdict == Verdict::proved);
  CHECK(mgl::check_b2_decomposition(5).verdict == Verdict::proved);
}

TEST_CASE("third-order contractions") {
  const auto q1 = mgl::check_third_order_contractions(1);
  CHECK(all_proved(q1));
  CHECK(find(q1, "normal_curvature_contraction").lhs.is_zero());
  CHECK(all_proved(mgl::check_third_order_contractions(2)));

  // q = 3: symbolic contraction evaluated at random rational points equals
  // a direct exact evaluation of 2 h_ijk^a h_ijm^b Rperp_{b a k m}.
  const auto q3 = mgl::check_third_order_contractions(3);
  CHECK(all_proved(q3));
  const auto& contraction = find(q3, "normal_curvature_contraction");
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const RVec a = random_vec(rng, 3), b = random_vec(rng, 3), a1 = random_vec(rng, 3),
               a2 = random_vec(rng, 3);
    auto h2 = [&](int i, int j, int al) -> Rational {
      const auto k = static_cast<std::size_t>(al);
      if (i != j) return b[k];
      return i == 0 ? a[k] : Rational(-a[k]);
    };
    auto h3 = [&](int i, int j, int k, int al) -> Rational {
      const auto s = static_cast<std::size_t>(al);
      const int twos = i + j + k;
      const Rational base = (twos % 2 == 0) ? a1[s] : a2[s];
      return twos >= 2 ? Rational(-base) : base;
    };
    Rational direct(0);
    for (int al = 0; al < 3; ++al)
      for (int be = 0; be < 3; ++be)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
              for (int m = 0; m < 2; ++m) {
                Rational rperp(0);
                for (int n = 0; n < 2; ++n) rperp += h2(k, n, be) * h2(n, m, al) - h2(k, n, al) * h2(n, m, be);
                direct += 2 * h3(i, j, k, al) * h3(i, j, m, be) * rperp;
              }
    std::map<std::string, Rational> env;
    bind_family(env, "a", a);
    bind_family(env, "b", b);
    bind_family(env, "a1", a1);
    bind_family(env, "a2", a2);
    CHECK(contraction.lhs.evaluate(env) == direct);
    const Rational closed = 32 * (rdot(a, a2) * rdot(b, a1) - rdot(a, a1) * rdot(b, a2));
    CHECK(direct == closed);
  }
}

TEST_CASE("gap factorizations") {
  const auto reports = mgl::check_gap_factorizations(2);
  CHECK(all_proved(reports));

  const auto& quad = find(reports, "pinching_quadratic_factorization");
  // t = 1: the roots are T_B(1) = 2 and T_A(1) = 20/9.
  for (const Rational& root : {Rational(2), Rational(20, 9)}) {
    CHECK(quad.rhs.evaluate({{"S", root}, {"t", Rational(1)}}) == 0);
  }
  // t = 0: S(3S-4)(3S-5) = (S/2) * 18 (S^2 - 3S + 20/9).
  for (int n = -3; n <= 6; ++n) {
    const Rational S(n, 2);
    const Rational direct = S * (3 * S - 4) * (3 * S - 5);
    CHECK(quad.lhs.evaluate({{"S", S}, {"t", Rational(0)}}) == direct);
    CHECK(direct == S / 2 * 18 * (S * S - 3 * S + Rational(20, 9)));
  }

  // Pointwise first-gap identity at a = (1,0), b = (0,1): both sides are 32.
  const auto& first = find(reports, "first_gap_pointwise");
  std::map<std::string, Rational> env;
  bind_family(env, "a", {Rational(1), Rational(0)});
  bind_family(env, "b", {Rational(0), Rational(1)});
  CHECK(first.lhs.evaluate(env) == 32);
  CHECK(first.rhs.evaluate(env) == 32);

  const auto& cubic = find(reports, "integrated_cubic_contraction");
  CHECK(cubic.note.find("nonzero") != std::string::npos);
}

TEST_CASE("property: |grad S|^2 symbolic expansion matches direct evaluation") {
  const auto reports = mgl::check_invariant_identities(3);
  const auto& grad = find(reports, "gradS_norm_expansion");
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const RVec a = random_vec(rng, 3), b = random_vec(rng, 3), a1 = random_vec(rng, 3),
               a2 = random_vec(rng, 3);
    const Rational p = rdot(a, a1), v = rdot(b, a2), r = rdot(a, a2), w = rdot(b, a1);
    const Rational direct = 16 * (p * p + v * v + r * r + w * w + 2 * p * v - 2 * r * w);
    std::map<std::string, Rational> env;
    bind_family(env, "a", a);
    bind_family(env, "b", b);
    bind_family(env, "a1", a1);
    bind_family(env, "a2", a2);
    CHECK(grad.lhs.evaluate(env) == direct);
  }
}

TEST_CASE("suite covers five groups for each q and reports injected faults") {
  const auto reports = mgl::run_identity_suite(2, 2);
  CHECK(all_proved(reports));
  std::set<std::pair<int, std::string>> seen;
  for (const auto& r : reports) seen.insert({r.q, r.group});
  CHECK(seen.size() == 10);
  // Deterministic order regardless of worker count.
  const auto serial = mgl::run_identity_suite(2, 1);
  REQUIRE(serial.size() == reports.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].name == reports[i].name);

  mgl::IdentityOptions opts;
  opts.inject_fault = "laplacian_ab_norm";
  const auto bad = mgl::check_b2_decomposition(2, opts);
  CHECK(bad.verdict == Verdict::failed);
  CHECK(bad.residual == RatPoly(-1L));
}
