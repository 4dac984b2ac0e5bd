#include "mgl/ratpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mgl {

namespace {

std::uint64_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

std::vector<std::string> merge_names(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void accumulate_term(RatPoly::TermMap& terms, Exponents exps, const Rational& c) {
  auto [it, inserted] = terms.try_emplace(std::move(exps), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace

bool GradedLex::operator()(const Exponents& lhs, const Exponents& rhs) const {
  const auto dl = total_degree(lhs);
  const auto dr = total_degree(rhs);
  if (dl != dr) return dl < dr;
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

RatPoly::RatPoly(const Rational& constant) {
  if (constant != 0) {
    Rational c = constant;
    c.canonicalize();
    terms_.emplace(Exponents{}, std::move(c));
  }
}

RatPoly::RatPoly(long constant) : RatPoly(Rational(constant)) {}

RatPoly RatPoly::variable(const std::string& name) {
  RatPoly p;
  p.vars_ = {name};
  p.terms_.emplace(Exponents{1}, Rational(1));
  return p;
}

RatPoly RatPoly::monomial(const Rational& coeff, const std::vector<std::string>& vars,
                          const Exponents& exps) {
  if (vars.size() != exps.size()) {
    throw std::invalid_argument("RatPoly::monomial: exponent count does not match variables");
  }
  RatPoly out(coeff);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (exps[i] != 0) out *= variable(vars[i]).pow(exps[i]);
  }
  return out;
}

unsigned RatPoly::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, static_cast<unsigned>(total_degree(e)));
  return d;
}

Rational RatPoly::coefficient(const std::map<std::string, std::uint32_t>& powers) const {
  Exponents key(vars_.size(), 0);
  for (const auto& [name, pw] : powers) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
    if (it == vars_.end() || *it != name) {
      if (pw != 0) return Rational(0);
      continue;
    }
    key[static_cast<std::size_t>(it - vars_.begin())] = pw;
  }
  auto found = terms_.find(key);
  return found == terms_.end() ? Rational(0) : found->second;
}

void RatPoly::align_to(const std::vector<std::string>& vars) {
  if (vars == vars_) return;
  std::vector<std::size_t> slot(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    slot[i] = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), vars_[i]) -
                                       vars.begin());
  }
  TermMap rebuilt;
  for (auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[slot[i]] = e[i];
    rebuilt.emplace(std::move(ne), c);
  }
  terms_ = std::move(rebuilt);
  vars_ = vars;
}

void RatPoly::add_scaled(const RatPoly& rhs, int sign) {
  if (rhs.vars_ != vars_) {
    const auto vars = merge_names(vars_, rhs.vars_);
    align_to(vars);
    RatPoly aligned = rhs;
    aligned.align_to(vars);
    add_scaled(aligned, sign);
    return;
  }
  for (const auto& [e, c] : rhs.terms_) accumulate_term(terms_, e, sign > 0 ? c : Rational(-c));
}

RatPoly& RatPoly::operator+=(const RatPoly& rhs) {
  add_scaled(rhs, +1);
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& rhs) {
  add_scaled(rhs, -1);
  return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

RatPoly RatPoly::operator-() const {
  RatPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

RatPoly operator*(const RatPoly& lhs, const RatPoly& rhs) {
  if (lhs.vars_ != rhs.vars_) {
    const auto vars = merge_names(lhs.vars_, rhs.vars_);
    RatPoly a = lhs;
    RatPoly b = rhs;
    a.align_to(vars);
    b.align_to(vars);
    return a * b;
  }
  RatPoly out;
  out.vars_ = lhs.vars_;
  if (lhs.is_zero() || rhs.is_zero()) return out;
  const std::size_t n = lhs.vars_.size();
  Exponents e(n);
  Rational prod;
  for (const auto& [el, cl] : lhs.terms_) {
    for (const auto& [er, cr] : rhs.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = el[i] + er[i];
      prod = cl * cr;
      accumulate_term(out.terms_, e, prod);
    }
  }
  return out;
}

bool operator==(const RatPoly& lhs, const RatPoly& rhs) {
  if (lhs.vars_ == rhs.vars_) return lhs.terms_ == rhs.terms_;
  return (lhs - rhs).is_zero();
}

RatPoly RatPoly::pow(unsigned n) const {
  RatPoly result(1L);
  RatPoly base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

RatPoly RatPoly::diff(const std::string& var) const {
  RatPoly out;
  out.vars_ = vars_;
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return out;
  const auto k = static_cast<std::size_t>(it - vars_.begin());
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents ne = e;
    ne[k] -= 1;
    accumulate_term(out.terms_, std::move(ne), c * e[k]);
  }
  return out;
}

Rational RatPoly::evaluate(const std::map<std::string, Rational>& values) const {
  std::vector<const Rational*> bound(vars_.size(), nullptr);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = values.find(vars_[i]);
    if (it != values.end()) bound[i] = &it->second;
  }
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (bound[i] == nullptr) {
        throw std::invalid_argument("RatPoly::evaluate: unbound variable " + vars_[i]);
      }
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= *bound[i];
    }
    sum += term;
  }
  return sum;
}

std::string RatPoly::dump() const {
  std::ostringstream os;
  os << "#";
  for (const auto& v : vars_) os << ' ' << v;
  os << '\n';
  for (const auto& [e, c] : terms_) {
    os << c.get_str() << ' ';
    for (auto x : e) os << ' ' << x;
    os << '\n';
  }
  return os.str();
}

std::string RatPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || total_degree(e) == 0) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << vars_[i];
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

RatPoly poly_combine(const RatPoly& p, const RatPoly& q, CombineOp op) {
  switch (op) {
    case CombineOp::add:
      return p + q;
    case CombineOp::sub:
      return p - q;
    case CombineOp::mul:
      return p * q;
  }
  throw std::invalid_argument("poly_combine: unknown op");
}

RatPoly poly_diff(const RatPoly& p, const std::string& var) { return p.diff(var); }

bool poly_is_zero(const RatPoly& p) { return p.is_zero(); }

}  // namespace mgl
