#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mgl/invariants.hpp"

namespace mgl {

struct GridNode {
  ChartPoint p;
  double weight = 0;        // parameter-space weight
  double area_element = 0;  // sqrt(det g) at the node
};

struct QuadratureGrid {
  Chart chart = Chart::sphere;
  int n1 = 0;  // n_theta Gauss-Legendre points in cos(theta), or n_u
  int n2 = 0;  // n_phi or n_v uniform points
  std::vector<GridNode> nodes;

  double area() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Requires n1, n2 >= 8.
QuadratureGrid build_grid(const ImmersionSpec& spec, int n1, int n2, int workers = 1);

/// Neumaier-compensated sum in index order.
double compensated_sum(const std::vector<double>& terms);

/// Sum of weight * area_element * field over nodes, in node order.
double integrate(const std::vector<double>& field, const QuadratureGrid& grid);

struct NodeSample {
  ChartPoint p;
  PointInvariants inv;
  double minimality_residual = 0;
  double K_intrinsic = 0;
  double b1_direct = 0;          // 4(|a1|^2 + |a2|^2)
  double codazzi_residual = 0;
  double trace_residual = 0;
  SimonsB1 simons;
  double b1_cross = 0;           // |b1_simons - b1_direct|
  bool grad_trusted = true;
  bool flagged = false;
};

struct SampleOptions {
  int workers = 1;
  SimonsOptions simons;
  double codazzi_tol = 1e-6;
  double minimality_tol = 1e-8;
  double b1_cross_tol = kB1CrossTolerance;
};

class NodeEvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every per-node quantity. Nodes are evaluated in parallel into fixed
/// slots, so the result does not depend on the worker count.
std::vector<NodeSample> sample_surface(const ImmersionSpec& spec, const QuadratureGrid& grid,
                                       const SampleOptions& opts = {});

struct IntegralReport {
  double area = 0;
  double integral_K = 0;             // intrinsic curvature
  double gauss_bonnet_residual = 0;  // integral_K - 2 pi chi
  double gauss_equation_residual = 0;  // max |K_intrinsic - (2 - S)/2|
  double integral_S = 0;
  double integral_lap_S = 0;
  double gap1_lhs = 0;
  double gap1_rhs = 0;
  double gap1_residual = 0;          // |lhs - rhs|
  double gap2_form1 = 0;
  double gap2_form2 = 0;
  double integral_rho_perp2 = 0;
  double bound_445 = 0;
  double mean_u = 0;
  double max_u = 0;
  double min_u = 0;
  double min_rho_perp = 0;
  int flagged_nodes = 0;
  int node_count = 0;
};

constexpr double kNonnegativityTolerance = 1e-6;

/// Throws InvariantViolation if gap1_lhs or gap2_form1 is below
/// -1e-6 * Area.
IntegralReport integral_report(const ImmersionSpec& spec, const QuadratureGrid& grid,
                               const std::vector<NodeSample>& samples);

IntegralReport integral_report(const ImmersionSpec& spec, const QuadratureGrid& grid,
                               const SampleOptions& opts = {});

}  // namespace mgl
