#include "mgl/lemmas.hpp"

#include <array>
#include <functional>
#include <stdexcept>

#include "mgl/parallel.hpp"

namespace mgl {

namespace {

using Vec = std::vector<RatPoly>;
using Mat2 = std::array<std::array<RatPoly, 2>, 2>;

RatPoly dot(const Vec& x, const Vec& y) {
  RatPoly s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

RatPoly sym(const std::string& name) { return RatPoly::variable(name); }

IdentityReport compare(const std::string& group, const std::string& name, int q,
                       const RatPoly& lhs, RatPoly rhs, const IdentityOptions& opts) {
  if (opts.inject_fault == name) rhs += RatPoly(1L);
  IdentityReport r;
  r.group = group;
  r.name = name;
  r.q = q;
  r.residual = lhs - rhs;
  r.lhs = lhs;
  r.rhs = std::move(rhs);
  r.verdict = r.residual.is_zero() ? Verdict::proved : Verdict::failed;
  return r;
}

/// Symbolic second fundamental form of a minimal surface: S_alpha =
/// [[a, b], [b, -a]] and the trace-free, totally symmetric third-order
/// coefficients h111 = a1, h112 = a2, h122 = -a1, h222 = -a2.
struct SymbolicShape {
  int q;
  Vec a, b, a1, a2;

  explicit SymbolicShape(int q_)
      : q(q_),
        a(SymbolFamily{"a", q_}.components()),
        b(SymbolFamily{"b", q_}.components()),
        a1(SymbolFamily{"a1", q_}.components()),
        a2(SymbolFamily{"a2", q_}.components()) {
    for (const auto& x : a) neg_a.push_back(-x);
  }

  Mat2 shape(int alpha) const {
    const auto k = static_cast<std::size_t>(alpha);
    return {{{a[k], b[k]}, {b[k], -a[k]}}};
  }

  const RatPoly& h2(int i, int j, int alpha) const {
    const auto k = static_cast<std::size_t>(alpha);
    if (i == j) return i == 0 ? a[k] : neg_a[k];
    return b[k];
  }

  // Index pattern of h_ijk depends only on how many indices equal 2.
  RatPoly h3(int i, int j, int k, int alpha) const {
    const auto s = static_cast<std::size_t>(alpha);
    switch (i + j + k) {
      case 0:
        return a1[s];
      case 1:
        return a2[s];
      case 2:
        return -a1[s];
      default:
        return -a2[s];
    }
  }

  RatPoly squared_norm() const {
    RatPoly s;
    for (int al = 0; al < q; ++al)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += h2(i, j, al) * h2(i, j, al);
    return s;
  }

  RatPoly gram(int al, int be) const {
    RatPoly s;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += h2(i, j, al) * h2(i, j, be);
    return s;
  }

  RatPoly normA2() const {
    RatPoly s;
    for (int al = 0; al < q; ++al)
      for (int be = 0; be < q; ++be) {
        const RatPoly g = gram(al, be);
        s += g * g;
      }
    return s;
  }

  RatPoly rho0_commutators() const {
    RatPoly s;
    for (int al = 0; al < q; ++al) {
      const Mat2 x = shape(al);
      for (int be = 0; be < q; ++be) {
        const Mat2 y = shape(be);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            RatPoly c;
            for (int m = 0; m < 2; ++m) c += x[i][m] * y[m][j] - y[i][m] * x[m][j];
            s += c * c;
          }
      }
    }
    return s;
  }

  // R^perp_{alpha beta k l} = h_km^alpha h_ml^beta - h_km^beta h_ml^alpha.
  RatPoly normal_curvature(int al, int be, int k, int l) const {
    RatPoly s;
    for (int m = 0; m < 2; ++m) s += h2(k, m, al) * h2(m, l, be) - h2(k, m, be) * h2(m, l, al);
    return s;
  }

  // S_k = 2 sum h_ij^alpha h_ijk^alpha.
  RatPoly grad_S(int k) const {
    RatPoly s;
    for (int al = 0; al < q; ++al)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += h2(i, j, al) * h3(i, j, k, al);
    return s * RatPoly(2L);
  }

  RatPoly b1_full() const {
    RatPoly s;
    for (int al = 0; al < q; ++al)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) {
            const RatPoly h = h3(i, j, k, al);
            s += h * h;
          }
    return s;
  }

  Vec neg_a;
};

/// Determinant by Laplace expansion over column subsets, memoized on the
/// subset bitmask.
RatPoly determinant(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  if (n == 0) return RatPoly(1L);
  std::vector<RatPoly> minors(std::size_t{1} << n);
  std::vector<bool> done(minors.size(), false);
  minors[0] = RatPoly(1L);
  done[0] = true;
  std::function<const RatPoly&(unsigned)> minor = [&](unsigned mask) -> const RatPoly& {
    if (done[mask]) return minors[mask];
    const int k = __builtin_popcount(mask);
    const std::size_t row = static_cast<std::size_t>(k - 1);
    RatPoly sum;
    int idx = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (1U << col))) continue;
      if (!m[row][col].is_zero()) {
        RatPoly term = m[row][col] * minor(mask & ~(1U << col));
        if (((k - 1) + idx) % 2 == 0) {
          sum += term;
        } else {
          sum -= term;
        }
      }
      ++idx;
    }
    minors[mask] = std::move(sum);
    done[mask] = true;
    return minors[mask];
  };
  return minor(static_cast<unsigned>((1U << n) - 1));
}

const std::string kInvariant = "invariant_identities";
const std::string kCharpoly = "eigen_charpoly";
const std::string kB2 = "b2_decomposition";
const std::string kThird = "third_order_contractions";
const std::string kGap = "gap_factorizations";

}  // namespace

std::vector<std::string> SymbolFamily::variable_names() const {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(dimension));
  for (int i = 1; i <= dimension; ++i) out.push_back(name + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<RatPoly> SymbolFamily::components() const {
  std::vector<RatPoly> out;
  for (const auto& v : variable_names()) out.push_back(RatPoly::variable(v));
  return out;
}

const char* to_string(Verdict v) { return v == Verdict::proved ? "proved" : "failed"; }

const std::vector<std::string>& identity_groups() {
  static const std::vector<std::string> groups = {kInvariant, kCharpoly, kB2, kThird, kGap};
  return groups;
}

std::vector<IdentityReport> check_invariant_identities(int q, const IdentityOptions& opts) {
  if (q < 1) throw std::invalid_argument("check_invariant_identities: q must be >= 1");
  const SymbolicShape h(q);
  const RatPoly aa = dot(h.a, h.a), bb = dot(h.b, h.b), ab = dot(h.a, h.b);
  const RatPoly normA2 = h.normA2();
  const RatPoly rho0 = h.rho0_commutators();
  const RatPoly S = h.squared_norm();

  std::vector<IdentityReport> out;
  out.push_back(compare(kInvariant, "normA2_expansion", q, normA2,
                        RatPoly(4L) * aa * aa + RatPoly(4L) * bb * bb + RatPoly(8L) * ab * ab, opts));
  out.push_back(compare(kInvariant, "rho0_commutator_expansion", q, rho0,
                        RatPoly(16L) * aa * bb - RatPoly(16L) * ab * ab, opts));

  const RatPoly p = dot(h.a, h.a1), r = dot(h.a, h.a2), w = dot(h.b, h.a1), v = dot(h.b, h.a2);
  const RatPoly s1 = h.grad_S(0), s2 = h.grad_S(1);
  out.push_back(compare(kInvariant, "gradS_norm_expansion", q, s1 * s1 + s2 * s2,
                        RatPoly(16L) * (p * p + v * v + r * r + w * w + RatPoly(2L) * p * v -
                                        RatPoly(2L) * r * w),
                        opts));
  out.push_back(compare(kInvariant, "normA2_rho0_relation", q, RatPoly(2L) * S * S,
                        rho0 + RatPoly(2L) * normA2, opts));
  return out;
}

RatPoly fundamental_charpoly(int q) {
  if (q < 1) throw std::invalid_argument("fundamental_charpoly: q must be >= 1");
  const SymbolicShape h(q);
  const RatPoly lambda = sym("lambda");
  std::vector<Vec> m(static_cast<std::size_t>(q), Vec(static_cast<std::size_t>(q)));
  for (int al = 0; al < q; ++al)
    for (int be = 0; be < q; ++be) {
      RatPoly entry = -h.gram(al, be);
      if (al == be) entry += lambda;
      m[static_cast<std::size_t>(al)][static_cast<std::size_t>(be)] = std::move(entry);
    }
  return determinant(m);
}

IdentityReport check_eigen_charpoly(int q, const IdentityOptions& opts) {
  if (q < 1) throw std::invalid_argument("check_eigen_charpoly: q must be >= 1");
  const SymbolicShape h(q);
  const RatPoly lambda = sym("lambda");
  const RatPoly det = fundamental_charpoly(q);
  const RatPoly S = h.squared_norm();
  const RatPoly rho0 = h.rho0_commutators();
  if (q == 1) {
    // Rank one: the quadratic factor degenerates and the commutator sum vanishes.
    auto r = compare(kCharpoly, "charpoly_factorization", q, det, lambda - S, opts);
    if (!rho0.is_zero()) {
      r.verdict = Verdict::failed;
      r.residual = rho0;
    }
    r.note = "codimension one: det = lambda - S and rho0 = 0";
    return r;
  }
  const RatPoly quad = lambda * lambda - S * lambda + RatPoly(frac(1, 4)) * rho0;
  return compare(kCharpoly, "charpoly_factorization", q, det,
                 lambda.pow(static_cast<unsigned>(q - 2)) * quad, opts);
}

IdentityReport check_b2_decomposition(int q, const IdentityOptions& opts) {
  if (q < 1) throw std::invalid_argument("check_b2_decomposition: q must be >= 1");
  const SymbolicShape h(q);
  const RatPoly aa = dot(h.a, h.a), bb = dot(h.b, h.b), ab = dot(h.a, h.b);
  const RatPoly S = RatPoly(2L) * (aa + bb);
  const RatPoly two_minus_S = RatPoly(2L) - S;
  Vec lap_a, lap_b;
  for (int al = 0; al < q; ++al) {
    const auto k = static_cast<std::size_t>(al);
    lap_a.push_back(h.a[k] * two_minus_S + RatPoly(2L) * h.b[k] * ab - RatPoly(2L) * h.a[k] * bb);
    lap_b.push_back(h.b[k] * two_minus_S + RatPoly(2L) * h.a[k] * ab - RatPoly(2L) * h.b[k] * aa);
  }
  const RatPoly lhs = RatPoly(2L) * (dot(lap_a, lap_a) + dot(lap_b, lap_b));
  const RatPoly rho0 = h.rho0_commutators();
  const RatPoly rhs =
      S * two_minus_S * two_minus_S - RatPoly(frac(1, 4)) * (RatPoly(8L) - RatPoly(5L) * S) * rho0;
  return compare(kB2, "laplacian_ab_norm", q, lhs, rhs, opts);
}

std::vector<IdentityReport> check_third_order_contractions(int q, const IdentityOptions& opts) {
  if (q < 1) throw std::invalid_argument("check_third_order_contractions: q must be >= 1");
  const SymbolicShape h(q);
  const RatPoly p = dot(h.a, h.a1), r = dot(h.a, h.a2), w = dot(h.b, h.a1), v = dot(h.b, h.a2);
  const RatPoly b1 = RatPoly(4L) * (dot(h.a1, h.a1) + dot(h.a2, h.a2));
  std::vector<IdentityReport> out;

  out.push_back(compare(kThird, "b1_normal_form", q, h.b1_full(), b1, opts));

  RatPoly contraction;
  for (int al = 0; al < q; ++al)
    for (int be = 0; be < q; ++be)
      for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 2; ++m) {
          const RatPoly rperp = h.normal_curvature(be, al, k, m);
          if (rperp.is_zero()) continue;
          RatPoly hh;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) hh += h.h3(i, j, k, al) * h.h3(i, j, m, be);
          contraction += hh * rperp;
        }
  contraction *= RatPoly(2L);
  out.push_back(compare(kThird, "normal_curvature_contraction", q, contraction,
                        RatPoly(32L) * (r * w - p * v), opts));

  {
    const RatPoly s1 = h.grad_S(0), s2 = h.grad_S(1);
    const RatPoly s1_form = RatPoly(4L) * (p + v);
    const RatPoly s2_form = RatPoly(4L) * (r - w);
    auto rep = compare(kThird, "gradS_components", q, s1, s1_form, opts);
    if (rep.verdict == Verdict::proved) {
      rep = compare(kThird, "gradS_components", q, s2, s2_form, {});
    }
    if (rep.verdict == Verdict::proved) {
      rep = compare(kThird, "gradS_components", q, s1_form * s1_form + s2_form * s2_form,
                    RatPoly(16L) * (p * p + v * v + r * r + w * w + RatPoly(2L) * p * v -
                                    RatPoly(2L) * r * w),
                    {});
    }
    out.push_back(std::move(rep));
  }

  // Constant-curvature contraction with R_ijkl = (2-S)/2 (d_ik d_jl - d_il d_jk).
  {
    const RatPoly S = h.squared_norm();
    const RatPoly half_k = RatPoly(frac(1, 2)) * (RatPoly(2L) - S);
    auto riem = [&](int i, int j, int k, int l) {
      const long d = static_cast<long>(i == k && j == l) - static_cast<long>(i == l && j == k);
      return d == 0 ? RatPoly() : half_k * RatPoly(d);
    };
    RatPoly lhs;
    for (int al = 0; al < q; ++al)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int m = 0; m < 2; ++m)
              for (int pp = 0; pp < 2; ++pp) {
                const RatPoly r1 = riem(pp, i, k, m);
                if (!r1.is_zero()) {
                  lhs += RatPoly(4L) * h.h3(i, j, k, al) * h.h3(pp, j, m, al) * r1;
                }
                const RatPoly r2 = riem(pp, m, k, m);
                if (!r2.is_zero()) lhs += h.h3(i, j, k, al) * h.h3(i, j, pp, al) * r2;
              }
    out.push_back(compare(kThird, "curvature_contraction_b1", q, lhs,
                          RatPoly(5L) * (RatPoly(1L) - RatPoly(frac(1, 2)) * S) * b1, opts));
  }

  // Recombination of the inner products into two squares.
  {
    const RatPoly grad2 = RatPoly(16L) * ((p + v) * (p + v) + (r - w) * (r - w));
    const RatPoly lhs = RatPoly(frac(-3, 4)) * grad2 + RatPoly(72L) * (r * w - p * v) +
                        RatPoly(4L) * (p * p + r * r + w * w + v * v);
    const RatPoly rhs = RatPoly(frac(-7, 4)) * grad2 + RatPoly(20L) * (p - v) * (p - v) +
                        RatPoly(20L) * (r + w) * (r + w);
    out.push_back(compare(kThird, "gradS_recombination", q, lhs, rhs, opts));
  }

  // Two forms of (h_ijk Lap h_ij)_k, linked by the Simons identity
  // Lap S = 2(B1 + 2S - |A|^2 - rho0) and Lap S^2 = 2 S Lap S + 2|grad S|^2.
  {
    const RatPoly S = h.squared_norm();
    const RatPoly normA2 = h.normA2();
    const RatPoly rho0 = h.rho0_commutators();
    const RatPoly s1 = h.grad_S(0), s2 = h.grad_S(1);
    const RatPoly grad2 = s1 * s1 + s2 * s2;
    const RatPoly lapS = RatPoly(2L) * (b1 + RatPoly(2L) * S - normA2 - rho0);
    const RatPoly lapS2 = RatPoly(2L) * S * lapS + RatPoly(2L) * grad2;
    const RatPoly two_minus_S = RatPoly(2L) - S;
    const RatPoly first = RatPoly(frac(1, 2)) * (RatPoly(4L) - RatPoly(3L) * S) * b1 +
                          two_minus_S * two_minus_S * S +
                          RatPoly(frac(1, 2)) * (RatPoly(5L) * S - RatPoly(8L)) *
                              (-(S * S) + normA2 + rho0) -
                          RatPoly(frac(1, 4)) * grad2 + RatPoly(32L) * (r * w - p * v);
    const RatPoly second = RatPoly(frac(1, 2)) * two_minus_S * S * S +
                           two_minus_S * (S * S - normA2 - rho0) + lapS -
                           RatPoly(frac(3, 8)) * lapS2 + RatPoly(8L) * (r + w) * (r + w) +
                           RatPoly(8L) * (p - v) * (p - v);
    out.push_back(compare(kThird, "divergence_term_forms", q, first, second, opts));
  }
  return out;
}

std::vector<IdentityReport> check_gap_factorizations(int q, const IdentityOptions& opts) {
  if (q < 1) throw std::invalid_argument("check_gap_factorizations: q must be >= 1");
  std::vector<IdentityReport> out;
  const RatPoly S = sym("S"), t = sym("t"), rho0 = sym("rho0"), rho_perp = sym("rho_perp");
  const RatPoly one(1L), two(2L), three(3L), four(4L), five(5L), nine(9L);

  // Integrand of the second gap formula in its lambda_2 and rho_perp forms,
  // with (S - 2 lambda_2)^2 = S^2 - rho0 and rho0 = 4 rho_perp^2.
  {
    const RatPoly d = S * S - four * rho_perp * rho_perp;
    const RatPoly form1 = S * (three * S - four) * (three * S - five) +
                          RatPoly(frac(1, 2)) * (RatPoly(16L) - nine * S) * d;
    const RatPoly form2 = RatPoly(frac(1, 2)) * S * (S - two) * (nine * S - RatPoly(20L)) +
                          two * rho_perp * rho_perp * (nine * S - RatPoly(16L));
    out.push_back(compare(kGap, "second_gap_forms", q, form1, form2, opts));
  }

  // With (S - 2 lambda_2)^2 = t^2 S^2 the integrand is (S/2)(18 - 9t^2)
  // (S - T_B)(S - T_A); cleared of the denominator 18 - 9t^2 the roots enter
  // through sum 2(27 - 8t^2)/(18 - 9t^2) and product 40/(18 - 9t^2).
  const RatPoly denom = RatPoly(18L) - nine * t * t;
  const RatPoly sum_num = two * (RatPoly(27L) - RatPoly(8L) * t * t);
  {
    const RatPoly form1 = S * (three * S - four) * (three * S - five) +
                          RatPoly(frac(1, 2)) * (RatPoly(16L) - nine * S) * t * t * S * S;
    const RatPoly factored = RatPoly(frac(1, 2)) * S * (denom * S * S - sum_num * S + RatPoly(40L));
    out.push_back(compare(kGap, "pinching_quadratic_factorization", q, form1, factored, opts));
  }
  // Completed square: ((18-9t^2)S - (27-8t^2))^2 + 45/4 - (8t^2 - 9/2)^2
  // equals (18-9t^2)((18-9t^2)S^2 - 2(27-8t^2)S + 40).
  {
    const RatPoly shifted = denom * S - (RatPoly(27L) - RatPoly(8L) * t * t);
    const RatPoly disc = RatPoly(8L) * t * t - RatPoly(frac(9, 2));
    const RatPoly lhs = shifted * shifted + RatPoly(frac(45, 4)) - disc * disc;
    const RatPoly rhs = denom * (denom * S * S - sum_num * S + RatPoly(40L));
    out.push_back(compare(kGap, "pinching_completed_square", q, lhs, rhs, opts));
  }

  const SymbolicShape h(q);
  const RatPoly Sq = h.squared_norm();
  const RatPoly normA2 = h.normA2();
  const RatPoly rho0q = h.rho0_commutators();

  // Pointwise identity behind the first gap formula.
  out.push_back(compare(kGap, "first_gap_pointwise", q, Sq * (three * Sq - four) - (Sq * Sq - rho0q),
                        two * (normA2 + rho0q - two * Sq), opts));

  // Simons identity rewritten with u = S + lambda_2, where
  // (3S/2 - u)^2 = (S - 2 lambda_2)^2 / 4 = (S^2 - rho0)/4.
  {
    const RatPoly b1 = sym("B1");
    const RatPoly d = Sq * Sq - rho0q;
    const RatPoly lhs = b1 + two * Sq - normA2 - rho0q;
    const RatPoly via_u = b1 + two * Sq - RatPoly(frac(3, 2)) * Sq * Sq + two * RatPoly(frac(1, 4)) * d;
    const RatPoly via_lambda =
        b1 - RatPoly(frac(1, 2)) * Sq * (three * Sq - four) + RatPoly(frac(1, 2)) * d;
    auto rep = compare(kGap, "simons_u_form", q, lhs, via_u, opts);
    if (rep.verdict == Verdict::proved) rep = compare(kGap, "simons_u_form", q, lhs, via_lambda, {});
    out.push_back(std::move(rep));
  }

  // Integrated cubic contraction: (2-S)(-3/2 S^2 + |A|^2 + rho0) =
  // (2-S)(-S^2/2 + rho0/2), using |A|^2 = (2S^2 - rho0)/2.
  {
    const RatPoly two_minus_S = two - Sq;
    const RatPoly lhs = two_minus_S * (RatPoly(frac(-3, 2)) * Sq * Sq + normA2 + rho0q);
    const RatPoly rhs = two_minus_S * (RatPoly(frac(-1, 2)) * Sq * Sq + RatPoly(frac(1, 2)) * rho0q);
    auto rep = compare(kGap, "integrated_cubic_contraction", q, lhs, rhs, opts);
    // Reading the middle step with rho_perp in place of rho0 is not an identity.
    const RatPoly variant =
        two_minus_S * (RatPoly(frac(-3, 2)) * Sq * Sq +
                       RatPoly(frac(1, 2)) * (two * Sq * Sq - rho_perp) + rho0q) -
        rhs;
    rep.note = "variant with rho_perp in place of rho0 in |A|^2 = (2S^2 - rho0)/2 leaves residual " +
               std::string(variant.is_zero() ? "0" : "nonzero: ") +
               (variant.is_zero() ? "" : variant.str());
    out.push_back(std::move(rep));
  }

  // Integrated balance: the rho0 / (3S/2 - u)^2 forms of the final
  // integrand agree pointwise, and the |grad S|^2, C1 and B2 terms reduce
  // the third displayed form to 2 C1 + |grad S|^2.
  {
    const RatPoly grad2 = sym("gradS2"), c1 = sym("C1");
    const RatPoly d = S * S - rho0;
    const RatPoly lhs = RatPoly(frac(1, 2)) * grad2 +
                        RatPoly(frac(1, 4)) * S * (S - two) * (RatPoly(20L) - nine * S) +
                        RatPoly(frac(1, 4)) * rho0 * (RatPoly(16L) - nine * S) + c1;
    const RatPoly rhs = RatPoly(frac(1, 2)) * grad2 -
                        RatPoly(frac(1, 2)) * S * (three * S - four) * (three * S - five) -
                        (RatPoly(16L) - nine * S) * RatPoly(frac(1, 4)) * d + c1;
    auto rep = compare(kGap, "integrated_balance_forms", q, lhs, rhs, opts);
    if (rep.verdict == Verdict::proved) {
      const RatPoly b2 = S * (two - S) * (two - S) -
                         RatPoly(frac(1, 4)) * (RatPoly(8L) - five * S) * rho0 + c1;
      const RatPoly third = two * (b2 + RatPoly(frac(1, 2)) * grad2 - S * (two - S) * (two - S) +
                                   (RatPoly(8L) - five * S) * RatPoly(frac(1, 4)) * rho0);
      rep = compare(kGap, "integrated_balance_forms", q, third, two * c1 + grad2, {});
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<IdentityReport> run_identity_suite(int qmax, int workers, const IdentityOptions& opts) {
  if (qmax < 1) throw std::invalid_argument("run_identity_suite: qmax must be >= 1");
  const auto& groups = identity_groups();
  const std::size_t ng = groups.size();
  const std::size_t tasks = static_cast<std::size_t>(qmax) * ng;
  std::vector<std::vector<IdentityReport>> slots(tasks);
  parallel_for(tasks, workers, [&](std::size_t i) {
    const int q = static_cast<int>(i / ng) + 1;
    switch (i % ng) {
      case 0:
        slots[i] = check_invariant_identities(q, opts);
        break;
      case 1:
        slots[i] = {check_eigen_charpoly(q, opts)};
        break;
      case 2:
        slots[i] = {check_b2_decomposition(q, opts)};
        break;
      case 3:
        slots[i] = check_third_order_contractions(q, opts);
        break;
      default:
        slots[i] = check_gap_factorizations(q, opts);
        break;
    }
  });
  std::vector<IdentityReport> merged;
  for (auto& s : slots)
    for (auto& r : s) merged.push_back(std::move(r));
  return merged;
}

}  // namespace mgl
