#include "mgl/jet.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mgl {

namespace {

template <int K>
TaylorVec<double, K> sphere_series(const ImmersionSpec& spec, ChartPoint p, double margin) {
  if (!(p.u >= margin && p.u <= std::numbers::pi - margin)) {
    std::ostringstream os;
    os << "chart point theta=" << p.u << " is within " << margin << " rad of a coordinate pole";
    throw DomainError(os.str());
  }
  using T = Taylor2<double, K>;
  const T theta = T::u(p.u), phi = T::v(p.v);
  const T st = sin(theta);
  const std::array<T, 3> xyz = {st * cos(phi), st * sin(phi), cos(theta)};

  int max_exp = 0;
  for (const auto& comp : spec.sphere_components)
    for (const auto& t : comp)
      for (int e : t.exps) max_exp = std::max(max_exp, e);
  std::array<std::vector<T>, 3> powers;
  for (std::size_t c = 0; c < 3; ++c) {
    powers[c].assign(static_cast<std::size_t>(max_exp) + 1, T(1.0));
    for (int e = 1; e <= max_exp; ++e)
      powers[c][static_cast<std::size_t>(e)] = powers[c][static_cast<std::size_t>(e - 1)] * xyz[c];
  }

  TaylorVec<double, K> out(static_cast<Eigen::Index>(spec.sphere_components.size()));
  for (std::size_t i = 0; i < spec.sphere_components.size(); ++i) {
    T sum;
    for (const auto& t : spec.sphere_components[i]) {
      sum += t.coeff * (powers[0][static_cast<std::size_t>(t.exps[0])] *
                        powers[1][static_cast<std::size_t>(t.exps[1])] *
                        powers[2][static_cast<std::size_t>(t.exps[2])]);
    }
    out.set(static_cast<Eigen::Index>(i), sum);
  }
  return out;
}

template <int K>
TaylorVec<double, K> torus_series(const ImmersionSpec& spec, ChartPoint p) {
  using T = Taylor2<double, K>;
  TaylorVec<double, K> out(static_cast<Eigen::Index>(spec.torus_components.size()));
  for (std::size_t i = 0; i < spec.torus_components.size(); ++i) {
    T sum;
    for (const auto& t : spec.torus_components[i]) {
      const T arg = double(t.freq[0]) * T::u(p.u) + double(t.freq[1]) * T::v(p.v);
      sum += t.coeff * (t.type == TrigTerm::Kind::cos ? cos(arg) : sin(arg));
    }
    out.set(static_cast<Eigen::Index>(i), sum);
  }
  return out;
}

}  // namespace

template <int K>
TaylorVec<double, K> immersion_series(const ImmersionSpec& spec, ChartPoint point,
                                      double pole_margin) {
  return spec.chart == Chart::sphere ? sphere_series<K>(spec, point, pole_margin)
                                     : torus_series<K>(spec, point);
}

template TaylorVec<double, 0> immersion_series<0>(const ImmersionSpec&, ChartPoint, double);
template TaylorVec<double, 1> immersion_series<1>(const ImmersionSpec&, ChartPoint, double);
template TaylorVec<double, 2> immersion_series<2>(const ImmersionSpec&, ChartPoint, double);
template TaylorVec<double, 3> immersion_series<3>(const ImmersionSpec&, ChartPoint, double);
template TaylorVec<double, 4> immersion_series<4>(const ImmersionSpec&, ChartPoint, double);

Eigen::VectorXd Jet::partial(int i, int j) const {
  if (i + j > order) throw std::out_of_range("jet partial above the evaluated order");
  return series.derivative(i, j);
}

Jet eval_jet(const ImmersionSpec& spec, ChartPoint point, int order, double pole_margin) {
  if (order < 0 || order > kMaxJetOrder) throw std::invalid_argument("jet order must be in 0..4");
  Jet jet;
  jet.point = point;
  jet.order = order;
  jet.series = TaylorVec<double, kMaxJetOrder>(static_cast<Eigen::Index>(spec.ambient_dim));
  auto place = [&](const auto& s) {
    jet.series.coeffs().leftCols(s.coeffs().cols()) = s.coeffs();
  };
  switch (order) {
    case 0: place(immersion_series<0>(spec, point, pole_margin)); break;
    case 1: place(immersion_series<1>(spec, point, pole_margin)); break;
    case 2: place(immersion_series<2>(spec, point, pole_margin)); break;
    case 3: place(immersion_series<3>(spec, point, pole_margin)); break;
    default: place(immersion_series<4>(spec, point, pole_margin)); break;
  }
  return jet;
}

double ChartGeometry::squared_norm_h() const {
  // S = g^ik g^jl <H_ij, H_kl>
  auto H = [&](int i, int j) -> const Eigen::VectorXd& { return normal[static_cast<std::size_t>(i + j)]; };
  double s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) s += g_inv(i, k) * g_inv(j, l) * H(i, j).dot(H(k, l));
  return s;
}

Eigen::VectorXd ChartGeometry::mean_curvature() const {
  return g_inv(0, 0) * normal[0] + 2 * g_inv(0, 1) * normal[1] + g_inv(1, 1) * normal[2];
}

ChartGeometry chart_geometry(const Jet& jet) {
  if (jet.order < 2) throw std::invalid_argument("chart_geometry needs a jet of order >= 2");
  const Eigen::VectorXd X = jet.value();
  const std::array<Eigen::VectorXd, 2> d1 = {jet.partial(1, 0), jet.partial(0, 1)};
  const std::array<Eigen::VectorXd, 3> d2 = {jet.partial(2, 0), jet.partial(1, 1), jet.partial(0, 2)};

  ChartGeometry cg;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) cg.g(i, j) = d1[static_cast<std::size_t>(i)].dot(d1[static_cast<std::size_t>(j)]);
  const double det = cg.g.determinant();
  if (!(det > 1e-14)) throw DomainError("degenerate induced metric (det g <= 1e-14)");
  cg.g_inv = cg.g.inverse();
  cg.area_element = std::sqrt(det);

  std::array<Eigen::Vector2d, 3> first_kind;  // <X_ij, X_l>
  for (std::size_t m = 0; m < 3; ++m) first_kind[m] = {d2[m].dot(d1[0]), d2[m].dot(d1[1])};
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        cg.gamma[static_cast<std::size_t>(k)](i, j) =
            cg.g_inv.row(k).dot(first_kind[static_cast<std::size_t>(i + j)]);
  for (std::size_t m = 0; m < 3; ++m) {
    const int i = m == 2 ? 1 : 0, j = m == 0 ? 0 : 1;
    cg.normal[m] = d2[m] - d2[m].dot(X) * X - cg.gamma[0](i, j) * d1[0] - cg.gamma[1](i, j) * d1[1];
  }
  return cg;
}

double intrinsic_curvature(const Jet& jet) {
  if (jet.order < 3) throw std::invalid_argument("intrinsic_curvature needs a jet of order >= 3");
  const auto X = jet.series.truncate<3>();
  const auto Xu = X.diff_u(), Xv = X.diff_v();
  const auto E = dot(Xu, Xu), F = dot(Xu, Xv), G = dot(Xv, Xv);
  const double e = E.value(), f = F.value(), g = G.value();
  const double Eu = E.derivative(1, 0), Ev = E.derivative(0, 1), Evv = E.derivative(0, 2);
  const double Fu = F.derivative(1, 0), Fv = F.derivative(0, 1), Fuv = F.derivative(1, 1);
  const double Gu = G.derivative(1, 0), Gv = G.derivative(0, 1), Guu = G.derivative(2, 0);
  Eigen::Matrix3d m1, m2;
  m1 << -Evv / 2 + Fuv - Guu / 2, Eu / 2, Fu - Ev / 2,
        Fv - Gu / 2, e, f,
        Gv / 2, f, g;
  m2 << 0, Ev / 2, Gu / 2,
        Ev / 2, e, f,
        Gu / 2, f, g;
  const double w = e * g - f * f;
  if (!(w > 1e-14)) throw DomainError("degenerate induced metric (det g <= 1e-14)");
  return (m1.determinant() - m2.determinant()) / (w * w);
}

}  // namespace mgl
