#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace mgl {

namespace taylor_detail {

constexpr int size_for(int order) { return (order + 1) * (order + 2) / 2; }

// Coefficients are stored by total degree d, then by the v-exponent j:
// index(i, j) = d(d+1)/2 + j with d = i + j.
constexpr int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }

template <int Order>
struct Exponents {
  std::array<int, size_for(Order)> u{};
  std::array<int, size_for(Order)> v{};
  constexpr Exponents() {
    for (int d = 0; d <= Order; ++d)
      for (int j = 0; j <= d; ++j) {
        u[static_cast<std::size_t>(index(d - j, j))] = d - j;
        v[static_cast<std::size_t>(index(d - j, j))] = j;
      }
  }
};

constexpr double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace taylor_detail

/// Truncated Taylor series in two variables (du, dv) around a base point,
/// sum of c_ij du^i dv^j over i + j <= Order.
template <typename Scalar, int Order>
class Taylor2 {
  static_assert(Order >= 0, "negative truncation order");

 public:
  static constexpr int kOrder = Order;
  static constexpr int kSize = taylor_detail::size_for(Order);
  using Coeffs = Eigen::Matrix<Scalar, kSize, 1>;

  Taylor2() : c_(Coeffs::Zero()) {}
  Taylor2(Scalar constant) : c_(Coeffs::Zero()) { c_[0] = constant; }  // NOLINT: implicit by design
  explicit Taylor2(const Coeffs& c) : c_(c) {}

  static Taylor2 u(Scalar base) {
    Taylor2 t(base);
    if constexpr (Order >= 1) t.c_[index(1, 0)] = Scalar(1);
    return t;
  }
  static Taylor2 v(Scalar base) {
    Taylor2 t(base);
    if constexpr (Order >= 1) t.c_[index(0, 1)] = Scalar(1);
    return t;
  }

  static constexpr int index(int i, int j) { return taylor_detail::index(i, j); }
  static constexpr int exp_u(int k) { return kExp.u[static_cast<std::size_t>(k)]; }
  static constexpr int exp_v(int k) { return kExp.v[static_cast<std::size_t>(k)]; }

  const Coeffs& coeffs() const { return c_; }
  Coeffs& coeffs() { return c_; }
  Scalar coeff(int i, int j) const { return c_[index(i, j)]; }
  Scalar& coeff(int i, int j) { return c_[index(i, j)]; }

  Scalar value() const { return c_[0]; }
  /// Partial derivative d^(i+j) / du^i dv^j at the base point.
  Scalar derivative(int i, int j) const {
    return c_[index(i, j)] * Scalar(taylor_detail::factorial(i) * taylor_detail::factorial(j));
  }

  Scalar eval(Scalar du, Scalar dv) const {
    Scalar s(0);
    for (int k = kSize - 1; k >= 0; --k) {
      Scalar m = c_[k];
      for (int p = 0; p < exp_u(k); ++p) m *= du;
      for (int p = 0; p < exp_v(k); ++p) m *= dv;
      s += m;
    }
    return s;
  }

  template <int M>
  Taylor2<Scalar, M> truncate() const {
    static_assert(M <= Order, "truncate can only lower the order");
    return Taylor2<Scalar, M>(c_.template head<taylor_detail::size_for(M)>());
  }

  Taylor2<Scalar, (Order > 0 ? Order - 1 : 0)> diff_u() const { return diff(1, 0); }
  Taylor2<Scalar, (Order > 0 ? Order - 1 : 0)> diff_v() const { return diff(0, 1); }

  Taylor2& operator+=(const Taylor2& o) { c_ += o.c_; return *this; }
  Taylor2& operator-=(const Taylor2& o) { c_ -= o.c_; return *this; }
  Taylor2& operator*=(Scalar s) { c_ *= s; return *this; }
  Taylor2& operator/=(Scalar s) { c_ /= s; return *this; }
  Taylor2& operator*=(const Taylor2& o) { *this = *this * o; return *this; }

  friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
  friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }
  friend Taylor2 operator-(const Taylor2& a) { return Taylor2(Coeffs(-a.c_)); }
  friend Taylor2 operator*(Taylor2 a, Scalar s) { return a *= s; }
  friend Taylor2 operator*(Scalar s, Taylor2 a) { return a *= s; }
  friend Taylor2 operator/(Taylor2 a, Scalar s) { return a /= s; }

  friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
    Taylor2 r;
    for (int p = 0; p < kSize; ++p) {
      if (a.c_[p] == Scalar(0)) continue;
      const int dp = exp_u(p) + exp_v(p);
      for (int q = 0; q < kSize; ++q) {
        if (dp + exp_u(q) + exp_v(q) > Order) break;
        r.c_[index(exp_u(p) + exp_u(q), exp_v(p) + exp_v(q))] += a.c_[p] * b.c_[q];
      }
    }
    return r;
  }

 private:
  static constexpr taylor_detail::Exponents<Order> kExp{};

  Taylor2<Scalar, (Order > 0 ? Order - 1 : 0)> diff(int du, int dv) const {
    constexpr int M = Order > 0 ? Order - 1 : 0;
    Taylor2<Scalar, M> r;
    if constexpr (Order > 0) {
      for (int k = 0; k < taylor_detail::size_for(M); ++k) {
        const int i = Taylor2<Scalar, M>::exp_u(k) + du, j = Taylor2<Scalar, M>::exp_v(k) + dv;
        r.coeffs()[k] = c_[index(i, j)] * Scalar(du ? i : j);
      }
    }
    return r;
  }

  Coeffs c_;
};

/// f(x) for a series x given f and its derivatives at x.value():
/// derivs[k] = f^(k)(x0).
template <typename Scalar, int Order>
Taylor2<Scalar, Order> compose(const Taylor2<Scalar, Order>& x,
                               const std::array<Scalar, Order + 1>& derivs) {
  Taylor2<Scalar, Order> delta = x;
  delta.coeffs()[0] = Scalar(0);
  Taylor2<Scalar, Order> r(derivs[Order] / Scalar(taylor_detail::factorial(Order)));
  for (int k = Order - 1; k >= 0; --k) {
    r = r * delta;
    r.coeffs()[0] += derivs[static_cast<std::size_t>(k)] / Scalar(taylor_detail::factorial(k));
  }
  return r;
}

template <typename Scalar, int Order>
Taylor2<Scalar, Order> sin(const Taylor2<Scalar, Order>& x) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(x.value()), c = cos(x.value());
  std::array<Scalar, Order + 1> d{};
  const Scalar cycle[4] = {s, c, -s, -c};
  for (int k = 0; k <= Order; ++k) d[static_cast<std::size_t>(k)] = cycle[k % 4];
  return compose(x, d);
}

template <typename Scalar, int Order>
Taylor2<Scalar, Order> cos(const Taylor2<Scalar, Order>& x) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(x.value()), c = cos(x.value());
  std::array<Scalar, Order + 1> d{};
  const Scalar cycle[4] = {c, -s, -c, s};
  for (int k = 0; k <= Order; ++k) d[static_cast<std::size_t>(k)] = cycle[k % 4];
  return compose(x, d);
}

/// x^p for real p; used with p = 1/2 and p = -1/2 and p = -1.
template <typename Scalar, int Order>
Taylor2<Scalar, Order> power(const Taylor2<Scalar, Order>& x, Scalar p) {
  using std::pow;
  const Scalar x0 = x.value();
  std::array<Scalar, Order + 1> d{};
  Scalar falling(1);
  for (int k = 0; k <= Order; ++k) {
    d[static_cast<std::size_t>(k)] = falling * pow(x0, p - Scalar(k));
    falling *= (p - Scalar(k));
  }
  return compose(x, d);
}

template <typename Scalar, int Order>
Taylor2<Scalar, Order> sqrt(const Taylor2<Scalar, Order>& x) {
  return power(x, Scalar(0.5));
}

template <typename Scalar, int Order>
Taylor2<Scalar, Order> inverse(const Taylor2<Scalar, Order>& x) {
  return power(x, Scalar(-1));
}

/// Vector-valued series: each row is one ambient component, each column
/// one Taylor coefficient (same indexing as Taylor2).
template <typename Scalar, int Order>
class TaylorVec {
 public:
  using Series = Taylor2<Scalar, Order>;
  static constexpr int kSize = Series::kSize;
  using Block = Eigen::Matrix<Scalar, Eigen::Dynamic, kSize>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  TaylorVec() = default;
  explicit TaylorVec(Eigen::Index dim) : m_(Block::Zero(dim, kSize)) {}
  explicit TaylorVec(const Block& m) : m_(m) {}

  static TaylorVec constant(const Vector& v) {
    TaylorVec t(v.size());
    t.m_.col(0) = v;
    return t;
  }

  Eigen::Index dim() const { return m_.rows(); }
  const Block& coeffs() const { return m_; }
  Block& coeffs() { return m_; }

  Series operator[](Eigen::Index i) const { return Series(m_.row(i).transpose()); }
  void set(Eigen::Index i, const Series& s) { m_.row(i) = s.coeffs().transpose(); }

  Vector value() const { return m_.col(0); }
  /// All partials of total order `i + j` at the base point, per component.
  Vector derivative(int i, int j) const {
    return m_.col(Series::index(i, j)) *
           Scalar(taylor_detail::factorial(i) * taylor_detail::factorial(j));
  }

  template <int M>
  TaylorVec<Scalar, M> truncate() const {
    return TaylorVec<Scalar, M>(m_.leftCols(taylor_detail::size_for(M)));
  }

  TaylorVec<Scalar, (Order > 0 ? Order - 1 : 0)> diff_u() const { return diff(1, 0); }
  TaylorVec<Scalar, (Order > 0 ? Order - 1 : 0)> diff_v() const { return diff(0, 1); }

  TaylorVec& operator+=(const TaylorVec& o) { m_ += o.m_; return *this; }
  TaylorVec& operator-=(const TaylorVec& o) { m_ -= o.m_; return *this; }
  friend TaylorVec operator+(TaylorVec a, const TaylorVec& b) { return a += b; }
  friend TaylorVec operator-(TaylorVec a, const TaylorVec& b) { return a -= b; }
  friend TaylorVec operator*(Scalar s, const TaylorVec& a) { return TaylorVec(Block(s * a.m_)); }

  friend TaylorVec operator*(const Series& s, const TaylorVec& a) {
    TaylorVec r(a.dim());
    for (int p = 0; p < kSize; ++p) {
      if (s.coeffs()[p] == Scalar(0)) continue;
      const int dp = Series::exp_u(p) + Series::exp_v(p);
      for (int q = 0; q < kSize; ++q) {
        if (dp + Series::exp_u(q) + Series::exp_v(q) > Order) break;
        r.m_.col(Series::index(Series::exp_u(p) + Series::exp_u(q),
                               Series::exp_v(p) + Series::exp_v(q))) += s.coeffs()[p] * a.m_.col(q);
      }
    }
    return r;
  }

 private:
  TaylorVec<Scalar, (Order > 0 ? Order - 1 : 0)> diff(int du, int dv) const {
    constexpr int M = Order > 0 ? Order - 1 : 0;
    using Lower = Taylor2<Scalar, M>;
    TaylorVec<Scalar, M> r(dim());
    if constexpr (Order > 0) {
      for (int k = 0; k < Lower::kSize; ++k) {
        const int i = Lower::exp_u(k) + du, j = Lower::exp_v(k) + dv;
        r.coeffs().col(k) = m_.col(Series::index(i, j)) * Scalar(du ? i : j);
      }
    }
    return r;
  }

  Block m_;
};

/// Euclidean inner product of two vector series, truncated.
template <typename Scalar, int Order>
Taylor2<Scalar, Order> dot(const TaylorVec<Scalar, Order>& a, const TaylorVec<Scalar, Order>& b) {
  using Series = Taylor2<Scalar, Order>;
  const Eigen::Matrix<Scalar, Series::kSize, Series::kSize> g =
      a.coeffs().transpose() * b.coeffs();
  Series r;
  for (int p = 0; p < Series::kSize; ++p) {
    const int dp = Series::exp_u(p) + Series::exp_v(p);
    for (int q = 0; q < Series::kSize; ++q) {
      if (dp + Series::exp_u(q) + Series::exp_v(q) > Order) break;
      r.coeffs()[Series::index(Series::exp_u(p) + Series::exp_u(q),
                               Series::exp_v(p) + Series::exp_v(q))] += g(p, q);
    }
  }
  return r;
}

}  // namespace mgl
