#pragma once

#include <string>
#include <vector>

#include "mgl/geoquad.hpp"
#include "mgl/ratpoly.hpp"

namespace mgl {

struct CalabiConstants {
  int s = 1;
  double r = 1;
  double K = 0;       // 2 / (s(s+1) r^2)
  double S = 0;       // 2 - 2K
  double u = 0;       // 3S/2
  int ambient_dim = 0;  // dimension N of the target sphere S^N, N = 2s
  double area = 0;    // 2 pi s(s+1) r^2
  // Exact values at r = 1.
  Rational K_exact, S_exact, u_exact;
};

CalabiConstants calabi_constants(int s, double r = 1.0);

/// sqrt(9 + 3 sqrt 5) / 4, the left end of the threshold domain.
double tau_star();

struct ThresholdValues {
  double tau = 0;
  double T_A = 0, T_B = 0;
  double That_A = 0, That_B = 0;
  double sigma = 0;
};

/// Throws DomainError outside [tau*, 1], where the discriminant
/// (8 tau^2 - 9/2)^2 - 45/4 is negative.
ThresholdValues threshold_T(double tau);

struct PinchingRoots {
  double gamma = 0;
  double S0 = 0;
  double S0_prime = 0;
  double gamma_bound = 0;  // (40 + 12 gamma) / (18 + 9 gamma)
};

/// Roots of 9S^2 + (9 gamma / 2 - 20) S - 8 gamma; gamma in [0, 4].
PinchingRoots pinching_roots(double gamma);

std::vector<ThresholdValues> threshold_table(double tau_lo, double tau_hi, int points);
std::vector<PinchingRoots> gamma_table(double gamma_lo, double gamma_hi, int points);

/// Empty when the table satisfies the monotonicity and endpoint checks.
std::vector<std::string> check_threshold_table(const std::vector<ThresholdValues>& table);
std::vector<std::string> check_gamma_table(const std::vector<PinchingRoots>& table);

std::string threshold_csv(const std::vector<ThresholdValues>& table);
std::string gamma_csv(const std::vector<PinchingRoots>& table);

struct Range {
  double min = 0;
  double max = 0;
  double spread() const { return max - min; }
};

/// Extremes of the measured fields over the grid.
struct FieldExtremes {
  Range S, u, rho_perp, t, K;
  double max_lambda_gap = 0;   // max |lambda1 - lambda2|
  double max_hopf = 0;         // max of |hopf_re|, |hopf_im|
  double gamma5_1 = 0;         // smallest gamma with rho_perp <= sqrt(gamma |K|) / 2 everywhere
  double gamma5_2 = 0;         // smallest gamma with rho_perp <= sqrt((u - 2) gamma S) / 2
};

FieldExtremes field_extremes(const std::vector<NodeSample>& samples);

enum class CertVerdict { consistent, violated, inapplicable };
const char* to_string(CertVerdict v);

struct CertificateEntry {
  std::string theorem;
  std::string hypothesis;
  bool hypothesis_holds = false;
  std::string conclusion;
  double measured = 0;
  double bound = 0;
  double margin = 0;  // measured - bound, or the failing residual
  CertVerdict verdict = CertVerdict::inapplicable;
  std::string note;
};

struct GapCertificate {
  std::string surface;
  FieldExtremes extremes;
  std::vector<CertificateEntry> entries;
  bool violated() const;
};

struct CertifyOptions {
  double constancy_rel = 1e-8;  // spread < constancy_rel * (1 + max |.|)
  double flat_normal = 1e-8;    // max rho_perp below this means a flat normal bundle
  double conclusion_tol = 1e-6;
};

bool is_constant(const Range& r, double rel = 1e-8);

GapCertificate certify(const ImmersionSpec& spec, const FieldExtremes& ex, const IntegralReport& ir,
                       const CertifyOptions& opts = {});

GapCertificate certify(const ImmersionSpec& spec, const std::vector<NodeSample>& samples,
                       const IntegralReport& ir, const CertifyOptions& opts = {});

class CertificateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws CertificateViolation naming the offending entries and extremes.
void require_consistent(const GapCertificate& cert);

}  // namespace mgl
