#include "mgl/invariants.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace mgl {

FundamentalMatrix fundamental_matrix(const ShapePair& sp) {
  FundamentalMatrix fm;
  fm.A = fundamental_outer(sp.a, sp.b);
  const Eigen::MatrixXd gram = fundamental_gram(sp.a, sp.b);
  fm.gram_residual = fm.A.size() ? (fm.A - gram).cwiseAbs().maxCoeff() : 0.0;
  return fm;
}

PointInvariants point_invariants(const ShapePair& sp) {
  PointInvariants p;
  const FundamentalMatrix fm = fundamental_matrix(sp);
  p.S = squared_norm_h(sp.a, sp.b);
  p.normA2 = fm.A.squaredNorm();
  p.gram_residual = fm.gram_residual;
  p.rho0 = rho0_closed(sp.a, sp.b);
  p.rho0_residual = std::abs(rho0_commutators(sp.a, sp.b) - p.rho0);
  if (p.S * p.S - p.rho0 < -kDdvvTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "DDVV slack S^2 - rho0 = " << p.S * p.S - p.rho0 << " below tolerance (S = " << p.S << ", rho0 = " << p.rho0
       << ")";
    throw InvariantViolation(os.str());
  }
  p.hopf_re = sp.a.squaredNorm() - sp.b.squaredNorm();
  p.hopf_im = -2 * sp.a.dot(sp.b);
  // S^2 - rho0 as a sum of squares. The difference form loses half the
  // digits of the eigenvalue gap near |a| = |b|, <a, b> = 0.
  p.ddvv_slack = 4 * (p.hopf_re * p.hopf_re + p.hopf_im * p.hopf_im);
  const double root = std::sqrt(std::max(p.ddvv_slack, 0.0));
  p.lambda1 = (p.S + root) / 2;
  // Product form avoids cancellation when rho0 is small.
  p.lambda2 = p.lambda1 > 0 ? std::max(p.rho0, 0.0) / 4 / p.lambda1 : 0.0;
  p.t = p.S < 1e-12 ? 1.0 : std::min(root / p.S, 1.0);
  p.u = p.S + p.lambda2;
  p.K = (2 - p.S) / 2;
  p.rho_perp = std::sqrt(std::max(p.rho0, 0.0)) / 2;

  const Eigen::Index q = fm.A.rows();
  if (q > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fm.A, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
    const double e1 = ev[q - 1], e2 = q >= 2 ? ev[q - 2] : 0.0;
    p.eigen_residual = std::max(std::abs(e1 - p.lambda1), std::abs(e2 - p.lambda2));
    for (Eigen::Index k = 0; k + 2 < q; ++k) p.tail_eigenvalue = std::max(p.tail_eigenvalue, std::abs(ev[k]));
  }
  return p;
}

double scalar_S(const ImmersionSpec& spec, ChartPoint p) {
  return chart_geometry(eval_jet(spec, p, 2)).squared_norm_h();
}

SimonsB1 b1_simons(const ImmersionSpec& spec, ChartPoint p, const PointInvariants& inv,
                   const SimonsOptions& opts) {
  const ChartGeometry cg = chart_geometry(eval_jet(spec, p, 2));
  auto S_at = [&](double du, double dv) { return scalar_S(spec, {p.u + du, p.v + dv}); };
  const double s0 = cg.squared_norm_h();
  auto laplacian = [&](double h) {
    const double sp0 = S_at(h, 0), sm0 = S_at(-h, 0), s0p = S_at(0, h), s0m = S_at(0, -h);
    const double spp = S_at(h, h), spm = S_at(h, -h), smp = S_at(-h, h), smm = S_at(-h, -h);
    const Eigen::Vector2d d1((sp0 - sm0) / (2 * h), (s0p - s0m) / (2 * h));
    Eigen::Matrix2d d2;
    d2(0, 0) = (sp0 - 2 * s0 + sm0) / (h * h);
    d2(1, 1) = (s0p - 2 * s0 + s0m) / (h * h);
    d2(0, 1) = d2(1, 0) = (spp - spm - smp + smm) / (4 * h * h);
    double lap = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        lap += cg.g_inv(i, j) * (d2(i, j) - cg.gamma[0](i, j) * d1[0] - cg.gamma[1](i, j) * d1[1]);
    return lap;
  };
  const double h = opts.step;
  const double l1 = laplacian(h), l2 = laplacian(h / 2), l4 = laplacian(h / 4);
  const double r1 = (4 * l2 - l1) / 3, r2 = (4 * l4 - l2) / 3;
  const double r = (16 * r2 - r1) / 15;

  SimonsB1 out;
  out.laplacian_S = r;
  out.extrapolation_gap = std::abs(r - r2);
  out.trusted = out.extrapolation_gap <= opts.disagreement_tol;
  out.value = r / 2 - 2 * inv.S + inv.normA2 + inv.rho0;
  return out;
}

double b1_cross_check(const SimonsB1& simons, const CovariantGradH& grad) {
  return std::abs(simons.value - grad.b1());
}

}  // namespace mgl
