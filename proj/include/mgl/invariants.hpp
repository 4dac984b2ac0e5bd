#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "mgl/frame.hpp"

namespace mgl {

// Point quantities of a shape pair (a, b) = (h_11, h_12) with h_22 = -a.
// Templated on the Eigen expression so they work for any real scalar.

template <typename DA, typename DB>
typename DA::Scalar squared_norm_h(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return 2 * (a.squaredNorm() + b.squaredNorm());
}

/// A = 2 a a^T + 2 b b^T.
template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> fundamental_outer(
    const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return 2 * a * a.transpose() + 2 * b * b.transpose();
}

/// A_{alpha beta} = tr(S_alpha S_beta) with S_alpha = [[a, b], [b, -a]].
template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> fundamental_gram(
    const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  const Eigen::Index q = a.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> A(q, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    Eigen::Matrix<Scalar, 2, 2> Si;
    Si << a[i], b[i], b[i], -a[i];
    for (Eigen::Index j = 0; j < q; ++j) {
      Eigen::Matrix<Scalar, 2, 2> Sj;
      Sj << a[j], b[j], b[j], -a[j];
      A(i, j) = (Si * Sj).trace();
    }
  }
  return A;
}

/// 16 |a|^2 |b|^2 - 16 <a, b>^2.
template <typename DA, typename DB>
typename DA::Scalar rho0_closed(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  const auto ab = a.dot(b);
  return 16 * a.squaredNorm() * b.squaredNorm() - 16 * ab * ab;
}

/// Sum over ordered pairs of |[S_alpha, S_beta]|^2.
template <typename DA, typename DB>
typename DA::Scalar rho0_commutators(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Scalar sum(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Eigen::Matrix<Scalar, 2, 2> Si;
    Si << a[i], b[i], b[i], -a[i];
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      Eigen::Matrix<Scalar, 2, 2> Sj;
      Sj << a[j], b[j], b[j], -a[j];
      sum += (Si * Sj - Sj * Si).squaredNorm();
    }
  }
  return sum;
}

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FundamentalMatrix {
  Eigen::MatrixXd A;        // outer-product form
  double gram_residual = 0; // max |outer - gram| entrywise
};

FundamentalMatrix fundamental_matrix(const ShapePair& sp);

struct PointInvariants {
  double S = 0;
  double normA2 = 0;
  double rho0 = 0;
  double rho_perp = 0;
  double lambda1 = 0;
  double lambda2 = 0;
  double u = 0;
  double t = 1;
  double K = 0;
  double ddvv_slack = 0;
  double hopf_re = 0;
  double hopf_im = 0;
  // cross-route residuals
  double rho0_residual = 0;     // commutators vs closed form
  double eigen_residual = 0;    // closed-form lambdas vs eigensolver
  double tail_eigenvalue = 0;   // largest |lambda_k|, k >= 3
  double gram_residual = 0;
};

constexpr double kDdvvTolerance = 1e-10;

/// Throws InvariantViolation if S^2 - rho0 < -1e-10.
PointInvariants point_invariants(const ShapePair& sp);

/// Frame-free S at a chart point (needs only the order-2 jet).
double scalar_S(const ImmersionSpec& spec, ChartPoint p);

struct SimonsB1 {
  double value = 0;            // B1 = Lap S / 2 - 2S + |A|^2 + rho0
  double laplacian_S = 0;
  double extrapolation_gap = 0;
  bool trusted = true;
};

struct SimonsOptions {
  double step = 1e-3;
  double disagreement_tol = 1e-4;
};

/// Laplace-Beltrami of the scalar field S by central differences at steps
/// h, h/2, h/4 with Richardson extrapolation.
SimonsB1 b1_simons(const ImmersionSpec& spec, ChartPoint p, const PointInvariants& inv,
                   const SimonsOptions& opts = {});

constexpr double kB1CrossTolerance = 1e-4;

double b1_cross_check(const SimonsB1& simons, const CovariantGradH& grad);

}  // namespace mgl
