#include "mgl/geoquad.hpp"

#include <Eigen/Eigenvalues>
#include <limits>
#include <numbers>
#include <sstream>

#include "mgl/parallel.hpp"

namespace mgl {

double QuadratureGrid::area() const {
  std::vector<double> ones(nodes.size(), 1.0);
  return integrate(ones, *this);
}

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes = es.eigenvalues();
  weights = 2 * es.eigenvectors().row(0).transpose().array().square();
}

QuadratureGrid build_grid(const ImmersionSpec& spec, int n1, int n2, int workers) {
  if (n1 < 8 || n2 < 8) throw std::invalid_argument("quadrature resolution must be at least 8 per axis");
  QuadratureGrid grid;
  grid.chart = spec.chart;
  grid.n1 = n1;
  grid.n2 = n2;
  const double two_pi = 2 * std::numbers::pi;
  if (spec.chart == Chart::sphere) {
    Eigen::VectorXd x, w;
    gauss_legendre(n1, x, w);
    for (int i = 0; i < n1; ++i) {
      const double theta = std::acos(x[i]);
      // d(cos theta) = -sin(theta) d(theta): the chart integrand picks up 1/sin(theta).
      const double wt = w[i] / std::sin(theta) * two_pi / n2;
      for (int j = 0; j < n2; ++j) grid.nodes.push_back({{theta, two_pi * j / n2}, wt, 0.0});
    }
  } else {
    const double wt = two_pi * two_pi / (double(n1) * n2);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) grid.nodes.push_back({{two_pi * i / n1, two_pi * j / n2}, wt, 0.0});
  }
  parallel_for(grid.nodes.size(), workers, [&](std::size_t k) {
    const Jet jet = eval_jet(spec, grid.nodes[k].p, 1);
    const Eigen::VectorXd Xu = jet.partial(1, 0), Xv = jet.partial(0, 1);
    const double det = Xu.squaredNorm() * Xv.squaredNorm() - Xu.dot(Xv) * Xu.dot(Xv);
    grid.nodes[k].area_element = std::sqrt(std::max(det, 0.0));
  });
  return grid;
}

double compensated_sum(const std::vector<double>& terms) {
  double sum = 0, c = 0;
  for (double x : terms) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

double integrate(const std::vector<double>& field, const QuadratureGrid& grid) {
  if (field.size() != grid.nodes.size()) throw std::invalid_argument("field size does not match the grid");
  std::vector<double> terms(field.size());
  for (std::size_t k = 0; k < field.size(); ++k)
    terms[k] = grid.nodes[k].weight * grid.nodes[k].area_element * field[k];
  return compensated_sum(terms);
}

std::vector<NodeSample> sample_surface(const ImmersionSpec& spec, const QuadratureGrid& grid,
                                       const SampleOptions& opts) {
  std::vector<NodeSample> out(grid.nodes.size());
  parallel_for(grid.nodes.size(), opts.workers, [&](std::size_t k) {
    const ChartPoint p = grid.nodes[k].p;
    try {
      NodeSample& s = out[k];
      s.p = p;
      const Jet jet = eval_jet(spec, p, 3);
      const FrameData frame = adapted_frame(jet);
      const ShapePair sp = second_fundamental_form(jet, frame);
      s.minimality_residual = sp.minimality_residual;
      s.inv = point_invariants(sp);
      s.K_intrinsic = intrinsic_curvature(jet);
      const CovariantGradH grad = covariant_grad_h(spec, p);
      s.b1_direct = grad.b1();
      s.codazzi_residual = grad.codazzi_residual;
      s.trace_residual = grad.trace_residual;
      s.grad_trusted = grad.trusted(opts.codazzi_tol);
      s.simons = b1_simons(spec, p, s.inv, opts.simons);
      s.b1_cross = b1_cross_check(s.simons, grad);
      s.flagged = !s.grad_trusted || !s.simons.trusted || s.b1_cross > opts.b1_cross_tol ||
                  s.minimality_residual > opts.minimality_tol;
    } catch (const std::exception& e) {
      std::ostringstream os;
      os.precision(17);
      os << "node " << k << " at (" << p.u << ", " << p.v << "): " << e.what();
      throw NodeEvaluationError(os.str());
    }
  });
  return out;
}

IntegralReport integral_report(const ImmersionSpec& spec, const QuadratureGrid& grid,
                               const std::vector<NodeSample>& samples) {
  const std::size_t n = samples.size();
  auto field = [&](auto f) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = f(samples[k]);
    return integrate(v, grid);
  };
  IntegralReport r;
  r.node_count = static_cast<int>(n);
  r.area = grid.area();
  r.integral_K = field([](const NodeSample& s) { return s.K_intrinsic; });
  r.gauss_bonnet_residual = r.integral_K - 2 * std::numbers::pi * spec.euler_char;
  r.integral_S = field([](const NodeSample& s) { return s.inv.S; });
  r.integral_lap_S = field([](const NodeSample& s) { return s.simons.laplacian_S; });
  r.gap1_lhs = field([](const NodeSample& s) {
    const double S = s.inv.S, d = S - 2 * s.inv.lambda2;
    return S * (3 * S - 4) - d * d;
  });
  r.gap1_rhs = 2 * field([](const NodeSample& s) { return s.b1_direct; });
  r.gap1_residual = std::abs(r.gap1_lhs - r.gap1_rhs);
  r.gap2_form1 = field([](const NodeSample& s) {
    const double S = s.inv.S, d = S - 2 * s.inv.lambda2;
    return S * (3 * S - 4) * (3 * S - 5) + 0.5 * (16 - 9 * S) * d * d;
  });
  r.gap2_form2 = field([](const NodeSample& s) {
    const double S = s.inv.S, rp = s.inv.rho_perp;
    return S / 2 * (S - 2) * (9 * S - 20) + 2 * rp * rp * (9 * S - 16);
  });
  r.integral_rho_perp2 = field([](const NodeSample& s) { return s.inv.rho_perp * s.inv.rho_perp; });
  r.bound_445 = 1 + std::sqrt(1 + r.integral_rho_perp2 / r.area);
  r.mean_u = field([](const NodeSample& s) { return s.inv.u; }) / r.area;

  r.max_u = -std::numeric_limits<double>::infinity();
  r.min_u = r.min_rho_perp = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    r.max_u = std::max(r.max_u, s.inv.u);
    r.min_u = std::min(r.min_u, s.inv.u);
    r.min_rho_perp = std::min(r.min_rho_perp, s.inv.rho_perp);
    r.gauss_equation_residual = std::max(r.gauss_equation_residual, std::abs(s.K_intrinsic - s.inv.K));
    r.flagged_nodes += s.flagged ? 1 : 0;
  }

  const double floor = -kNonnegativityTolerance * r.area;
  if (r.gap1_lhs < floor || r.gap2_form1 < floor) {
    std::ostringstream os;
    os.precision(17);
    os << "integral nonnegativity violated on '" << spec.name << "': gap1_lhs = " << r.gap1_lhs
       << ", gap2_form1 = " << r.gap2_form1 << ", area = " << r.area;
    throw InvariantViolation(os.str());
  }
  return r;
}

IntegralReport integral_report(const ImmersionSpec& spec, const QuadratureGrid& grid,
                               const SampleOptions& opts) {
  return integral_report(spec, grid, sample_surface(spec, grid, opts));
}

}  // namespace mgl
