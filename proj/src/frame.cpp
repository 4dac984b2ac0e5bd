#include "mgl/frame.hpp"

#include <cmath>

namespace mgl {

namespace {

template <int K>
struct SeriesFrame {
  using Vec = TaylorVec<double, K>;
  using Ser = Taylor2<double, K>;
  Vec X;
  std::array<Vec, 2> e;
  std::vector<Vec> xi;
  std::array<std::array<Ser, 2>, 2> E;  // E[a][i]: e_a = E[a][0] X_u + E[a][1] X_v
  std::vector<int> pivots;
};

template <int K>
SeriesFrame<K> build_frame(const TaylorVec<double, K + 1>& full, double rotation) {
  using Vec = TaylorVec<double, K>;
  using Ser = Taylor2<double, K>;
  SeriesFrame<K> f;
  f.X = full.template truncate<K>();
  const Vec Xu = full.diff_u(), Xv = full.diff_v();
  const Ser guu = dot(Xu, Xu);
  if (!(guu.value() > 1e-14)) throw DomainError("degenerate chart basis: |X_u| vanishes");
  const Ser inv_nu = power(guu, -0.5);
  const Vec e1 = inv_nu * Xu;
  const Ser c = dot(Xv, e1);
  const Vec w = Xv - c * e1;
  const Ser ww = dot(w, w);
  if (!(ww.value() * guu.value() > 1e-14)) throw DomainError("degenerate induced metric (det g <= 1e-14)");
  const Ser inv_nw = power(ww, -0.5);
  const Vec e2 = inv_nw * w;
  std::array<std::array<Ser, 2>, 2> E = {{{inv_nu, Ser(0.0)}, {-(c * inv_nu * inv_nw), inv_nw}}};

  const double cs = std::cos(rotation), sn = std::sin(rotation);
  f.e = {cs * e1 + sn * e2, cs * e2 - sn * e1};
  for (int i = 0; i < 2; ++i) {
    f.E[0][static_cast<std::size_t>(i)] = cs * E[0][static_cast<std::size_t>(i)] + sn * E[1][static_cast<std::size_t>(i)];
    f.E[1][static_cast<std::size_t>(i)] = cs * E[1][static_cast<std::size_t>(i)] - sn * E[0][static_cast<std::size_t>(i)];
  }

  // Normals: pivoted Gram-Schmidt of the ambient coordinate vectors against
  // {X, e1, e2}. The pivot is the candidate with the largest residual at the
  // base point; ties go to the lower coordinate index.
  const Eigen::Index n = full.dim();
  std::vector<Vec> basis = {f.X, e1, e2};
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  const int q = static_cast<int>(n) - 3;
  for (int step = 0; step < q; ++step) {
    int best = -1;
    double best_norm = -1;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      double proj = 0;
      for (const auto& b : basis) proj += b.coeffs()(k, 0) * b.coeffs()(k, 0);
      const double r = 1.0 - proj;
      if (r > best_norm) {
        best_norm = r;
        best = static_cast<int>(k);
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    Vec r = Vec::constant(Eigen::VectorXd::Unit(n, best));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) r -= dot(r, b) * b;
    const Vec xi = power(dot(r, r), -0.5) * r;
    basis.push_back(xi);
    f.xi.push_back(xi);
    f.pivots.push_back(best);
  }
  return f;
}

// Directional derivative along e_c of a vector series, at the base point.
template <int K>
Eigen::VectorXd along(const SeriesFrame<K>& f, int c, const TaylorVec<double, K>& v) {
  const auto& Ec = f.E[static_cast<std::size_t>(c)];
  return Ec[0].value() * v.derivative(1, 0) + Ec[1].value() * v.derivative(0, 1);
}

template <int K, int M>
double along(const SeriesFrame<K>& f, int c, const Taylor2<double, M>& s) {
  const auto& Ec = f.E[static_cast<std::size_t>(c)];
  return Ec[0].value() * s.derivative(1, 0) + Ec[1].value() * s.derivative(0, 1);
}

// h_ab^alpha as series of order K-1 from a frame of order K and the
// immersion series of order K+1.
template <int K>
std::array<std::vector<Taylor2<double, K - 1>>, 3> shape_series(const SeriesFrame<K>& f,
                                                              const TaylorVec<double, K + 1>& full) {
  constexpr int M = K - 1;
  using Ser = Taylor2<double, M>;
  const auto Xu = full.diff_u(), Xv = full.diff_v();
  const std::array<TaylorVec<double, M>, 3> d2 = {Xu.diff_u(), Xu.diff_v(), Xv.diff_v()};
  std::array<std::array<Ser, 2>, 2> E;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < 2; ++i) E[a][i] = f.E[a][i].template truncate<M>();
  std::array<std::vector<Ser>, 3> h;  // index 0: h11, 1: h12, 2: h22
  for (const auto& xi_full : f.xi) {
    const auto xi = xi_full.template truncate<M>();
    const std::array<Ser, 3> p = {dot(d2[0], xi), dot(d2[1], xi), dot(d2[2], xi)};
    auto second = [&](std::size_t a, std::size_t b) {
      return E[a][0] * E[b][0] * p[0] + (E[a][0] * E[b][1] + E[a][1] * E[b][0]) * p[1] +
             E[a][1] * E[b][1] * p[2];
    };
    h[0].push_back(second(0, 0));
    h[1].push_back(second(0, 1));
    h[2].push_back(second(1, 1));
  }
  return h;
}

}  // namespace

double CovariantGradH::b1_full() const { return h3[0].squaredNorm() + h3[1].squaredNorm(); }

FrameData adapted_frame(const Jet& jet, double rotation) {
  if (jet.order < 2) throw std::invalid_argument("adapted_frame needs a jet of order >= 2");
  const auto full = jet.series.truncate<2>();
  const SeriesFrame<1> f = build_frame<1>(full, rotation);
  const Eigen::Index q = static_cast<Eigen::Index>(f.xi.size());

  FrameData fd;
  fd.X = f.X.value();
  fd.e1 = f.e[0].value();
  fd.e2 = f.e[1].value();
  fd.normals.resize(fd.X.size(), q);
  for (Eigen::Index k = 0; k < q; ++k) fd.normals.col(k) = f.xi[static_cast<std::size_t>(k)].value();
  const Eigen::VectorXd Xu = jet.partial(1, 0), Xv = jet.partial(0, 1);
  fd.metric << Xu.dot(Xu), Xu.dot(Xv), Xv.dot(Xu), Xv.dot(Xv);
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      fd.tangent_coeffs(a, i) = f.E[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].value();
  for (int c = 0; c < 2; ++c) {
    fd.omega12[c] = along(f, c, f.e[0]).dot(fd.e2);
    auto& om = fd.omega_normal[static_cast<std::size_t>(c)];
    om.resize(q, q);
    for (Eigen::Index be = 0; be < q; ++be) {
      const Eigen::VectorXd d = along(f, c, f.xi[static_cast<std::size_t>(be)]);
      for (Eigen::Index al = 0; al < q; ++al) om(be, al) = d.dot(fd.normals.col(al));
    }
  }
  fd.pivots = f.pivots;
  return fd;
}

ShapePair second_fundamental_form(const Jet& jet, const FrameData& frame) {
  if (jet.order < 2) throw std::invalid_argument("second_fundamental_form needs a jet of order >= 2");
  const std::array<Eigen::VectorXd, 3> d2 = {jet.partial(2, 0), jet.partial(1, 1), jet.partial(0, 2)};
  const Eigen::Matrix2d& E = frame.tangent_coeffs;
  auto second = [&](int a, int b) {
    const Eigen::VectorXd v = E(a, 0) * E(b, 0) * d2[0] + (E(a, 0) * E(b, 1) + E(a, 1) * E(b, 0)) * d2[1] +
                              E(a, 1) * E(b, 1) * d2[2];
    return Eigen::VectorXd(frame.normals.transpose() * v);
  };
  ShapePair sp;
  sp.a = second(0, 0);
  sp.b = second(0, 1);
  const Eigen::VectorXd h22 = second(1, 1);
  sp.minimality_residual = sp.a.size() ? (sp.a + h22).cwiseAbs().maxCoeff() : 0.0;
  return sp;
}

CovariantGradH covariant_grad_h(const ImmersionSpec& spec, ChartPoint point, double rotation) {
  const auto full = immersion_series<3>(spec, point);
  const SeriesFrame<2> f = build_frame<2>(full, rotation);
  const auto h = shape_series<2>(f, full);
  const Eigen::Index q = static_cast<Eigen::Index>(f.xi.size());

  auto hidx = [](int a, int b) { return static_cast<std::size_t>(a + b); };
  // Connection values at the base point.
  double tan_conn[2][2][2];  // [c][a][m] = <e_c(e_a), e_m>
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a) {
      const Eigen::VectorXd d = along(f, c, f.e[static_cast<std::size_t>(a)]);
      for (int m = 0; m < 2; ++m) tan_conn[c][a][m] = d.dot(f.e[static_cast<std::size_t>(m)].value());
    }
  std::array<Eigen::MatrixXd, 2> norm_conn;  // [c](beta, alpha) = <e_c(xi_beta), xi_alpha>
  for (int c = 0; c < 2; ++c) {
    norm_conn[static_cast<std::size_t>(c)].resize(q, q);
    for (Eigen::Index be = 0; be < q; ++be) {
      const Eigen::VectorXd d = along(f, c, f.xi[static_cast<std::size_t>(be)]);
      for (Eigen::Index al = 0; al < q; ++al)
        norm_conn[static_cast<std::size_t>(c)](be, al) = d.dot(f.xi[static_cast<std::size_t>(al)].value());
    }
  }

  CovariantGradH out;
  for (int c = 0; c < 2; ++c) {
    auto& hc = out.h3[static_cast<std::size_t>(c)];
    hc.resize(4, q);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (Eigen::Index al = 0; al < q; ++al) {
          const auto& hab = h[hidx(a, b)];
          double v = along(f, c, hab[static_cast<std::size_t>(al)]);
          for (int m = 0; m < 2; ++m) {
            v -= tan_conn[c][a][m] * h[hidx(m, b)][static_cast<std::size_t>(al)].value();
            v -= tan_conn[c][b][m] * h[hidx(a, m)][static_cast<std::size_t>(al)].value();
          }
          for (Eigen::Index be = 0; be < q; ++be)
            v += hab[static_cast<std::size_t>(be)].value() * norm_conn[static_cast<std::size_t>(c)](be, al);
          hc(2 * a + b, al) = v;
        }
  }
  out.a1 = out.h3[0].row(0).transpose();
  out.a2 = out.h3[1].row(0).transpose();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (Eigen::Index al = 0; al < q; ++al) {
          const double abc = out.h3[static_cast<std::size_t>(c)](2 * a + b, al);
          const double acb = out.h3[static_cast<std::size_t>(b)](2 * a + c, al);
          out.codazzi_residual = std::max(out.codazzi_residual, std::abs(abc - acb));
        }
  for (int c = 0; c < 2; ++c)
    for (Eigen::Index al = 0; al < q; ++al)
      out.trace_residual = std::max(out.trace_residual, std::abs(out.h3[static_cast<std::size_t>(c)](0, al) +
                                                                 out.h3[static_cast<std::size_t>(c)](3, al)));
  return out;
}

}  // namespace mgl
