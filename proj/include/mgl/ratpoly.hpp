#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mgl {

using Rational = mpq_class;

/// Exponent multi-index, one entry per variable of the owning polynomial.
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order: lower total degree first, ties broken
/// lexicographically with the first variable most significant.
struct GradedLex {
  bool operator()(const Exponents& lhs, const Exponents& rhs) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Variables are kept sorted by name; combining two polynomials aligns both
/// onto the union of their variable lists. No stored term has a zero
/// coefficient, so the zero polynomial is exactly the empty term map.
class RatPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLex>;

  RatPoly() = default;
  RatPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  RatPoly(long constant);             // NOLINT(google-explicit-constructor)

  static RatPoly variable(const std::string& name);
  static RatPoly monomial(const Rational& coeff, const std::vector<std::string>& vars,
                          const Exponents& exps);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned degree() const;

  /// Coefficient of a monomial given as (name, power) pairs; zero if absent.
  Rational coefficient(const std::map<std::string, std::uint32_t>& powers) const;

  RatPoly& operator+=(const RatPoly& rhs);
  RatPoly& operator-=(const RatPoly& rhs);
  RatPoly& operator*=(const RatPoly& rhs);
  RatPoly operator-() const;

  friend RatPoly operator+(RatPoly lhs, const RatPoly& rhs) { return lhs += rhs; }
  friend RatPoly operator-(RatPoly lhs, const RatPoly& rhs) { return lhs -= rhs; }
  friend RatPoly operator*(const RatPoly& lhs, const RatPoly& rhs);
  friend bool operator==(const RatPoly& lhs, const RatPoly& rhs);

  RatPoly pow(unsigned n) const;
  RatPoly diff(const std::string& var) const;

  /// Exact evaluation. Every variable carrying a nonzero exponent must be bound.
  Rational evaluate(const std::map<std::string, Rational>& values) const;

  /// Debug dump: a header naming the variables, then one term per line as
  /// "coeff  e1 e2 ... en" in canonical order.
  std::string dump() const;

  /// Human-readable form, e.g. "2*x^2*y - 1/3".
  std::string str() const;

 private:
  void align_to(const std::vector<std::string>& vars);
  void add_scaled(const RatPoly& rhs, int sign);

  std::vector<std::string> vars_;
  TermMap terms_;
};

enum class CombineOp { add, sub, mul };

RatPoly poly_combine(const RatPoly& p, const RatPoly& q, CombineOp op);
RatPoly poly_diff(const RatPoly& p, const std::string& var);
bool poly_is_zero(const RatPoly& p);

}  // namespace mgl
