#pragma once

#include <Eigen/Dense>
#include <array>

#include "mgl/jet.hpp"

namespace mgl {

struct FrameData {
  Eigen::VectorXd X;
  Eigen::VectorXd e1, e2;
  Eigen::MatrixXd normals;        // columns xi_3 .. xi_{2+q}
  Eigen::Matrix2d metric;         // g_ij of the chart basis (X_u, X_v)
  Eigen::Matrix2d tangent_coeffs; // row a: e_a = E(a,0) X_u + E(a,1) X_v
  Eigen::Vector2d omega12;        // <e_k(e_1), e_2>, k = 1, 2
  std::array<Eigen::MatrixXd, 2> omega_normal;  // (beta, alpha) -> <e_k(xi_beta), xi_alpha>
  std::vector<int> pivots;        // ambient coordinate chosen for each normal
};

struct ShapePair {
  Eigen::VectorXd a;  // h_11
  Eigen::VectorXd b;  // h_12
  double minimality_residual = 0;  // max_alpha |h_11 + h_22|
};

struct CovariantGradH {
  Eigen::VectorXd a1;  // h_111
  Eigen::VectorXd a2;  // h_112
  std::array<Eigen::MatrixXd, 2> h3;  // h3[c](2*a + b, alpha) = h_abc
  double codazzi_residual = 0;        // max |h_abc - h_(permuted)|
  double trace_residual = 0;          // max |h_11c + h_22c|
  double b1() const { return 4 * (a1.squaredNorm() + a2.squaredNorm()); }
  double b1_full() const;             // sum of all h_abc^2
  bool trusted(double tol = 1e-6) const { return codazzi_residual < tol && trace_residual < tol; }
};

/// Orthonormal frame adapted to the surface at the jet's base point. A
/// nonzero `rotation` turns (e_1, e_2) by that angle in the tangent plane.
FrameData adapted_frame(const Jet& jet, double rotation = 0);

ShapePair second_fundamental_form(const Jet& jet, const FrameData& frame);

/// h_abc by differentiating the frame construction along e_c; needs
/// an order-3 jet neighbourhood, evaluated exactly through series.
CovariantGradH covariant_grad_h(const ImmersionSpec& spec, ChartPoint point, double rotation = 0);

}  // namespace mgl
