#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "mgl/immersion.hpp"
#include "mgl/taylor.hpp"

namespace mgl {

constexpr int kMaxJetOrder = 4;
constexpr double kDefaultPoleMargin = 1e-3;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Taylor coefficients of every ambient component in the chart offsets
/// (du, dv) up to total order 4. Mixed partials are stored once.
struct Jet {
  ChartPoint point;
  int order = 0;
  TaylorVec<double, kMaxJetOrder> series;

  Eigen::VectorXd value() const { return series.value(); }
  Eigen::VectorXd partial(int i, int j) const;
};

Jet eval_jet(const ImmersionSpec& spec, ChartPoint point, int order,
             double pole_margin = kDefaultPoleMargin);

/// Series of the immersion at `point`, truncated at order K. Instantiated for K = 0..4.
template <int K>
TaylorVec<double, K> immersion_series(const ImmersionSpec& spec, ChartPoint point,
                                      double pole_margin = kDefaultPoleMargin);

/// Frame-free second-order geometry in the chart basis.
struct ChartGeometry {
  Eigen::Matrix2d g;
  Eigen::Matrix2d g_inv;
  double area_element = 0;                 // sqrt(det g)
  std::array<Eigen::Matrix2d, 2> gamma;    // gamma[k](i,j) = Gamma^k_ij
  std::array<Eigen::VectorXd, 3> normal;   // normal parts of X_uu, X_uv, X_vv

  double squared_norm_h() const;
  Eigen::VectorXd mean_curvature() const;  // g^ij (X_ij)^perp
};

/// Requires a jet of order >= 2. Throws DomainError on a degenerate metric.
ChartGeometry chart_geometry(const Jet& jet);

/// Gauss curvature of the induced metric from its own derivatives
/// (Brioschi formula); requires a jet of order >= 3.
double intrinsic_curvature(const Jet& jet);

}  // namespace mgl
