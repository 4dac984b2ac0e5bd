#pragma once

#include <string>
#include <vector>

#include "mgl/ratpoly.hpp"

namespace mgl {

/// One family of symbolic vector components: a, b, a1 or a2, each carrying
/// q scalar variables named like "a[1]" ... "a[q]".
struct SymbolFamily {
  std::string name;
  int dimension = 0;

  std::vector<std::string> variable_names() const;
  std::vector<RatPoly> components() const;
};

enum class Verdict { proved, failed };

const char* to_string(Verdict v);

struct IdentityReport {
  std::string group;
  std::string name;
  int q = 0;
  Verdict verdict = Verdict::failed;
  RatPoly lhs;
  RatPoly rhs;
  RatPoly residual;  // lhs - rhs; empty when proved
  std::string note;
};

struct IdentityOptions {
  /// Name of an identity whose right-hand side is perturbed by +1 before
  /// comparison. Used to exercise the failure path end to end.
  std::string inject_fault;
};

/// det(lambda I - A) with A_{alpha beta} = tr(S_alpha S_beta), in the
/// variables lambda, a[1..q], b[1..q].
RatPoly fundamental_charpoly(int q);

/// |A|^2, rho0 (commutator route), |grad S|^2 and 2S^2 = rho0 + 2|A|^2.
std::vector<IdentityReport> check_invariant_identities(int q, const IdentityOptions& opts = {});

/// det(lambda I - A) = lambda^(q-2) (lambda^2 - S lambda + rho0/4).
IdentityReport check_eigen_charpoly(int q, const IdentityOptions& opts = {});

/// 2(|Lap a|^2 + |Lap b|^2) = S(2-S)^2 - (8-5S)/4 rho0.
IdentityReport check_b2_decomposition(int q, const IdentityOptions& opts = {});

/// Contractions of the trace-free, totally symmetric third-order tensor.
std::vector<IdentityReport> check_third_order_contractions(int q, const IdentityOptions& opts = {});

/// Factorizations behind the integral gap formulas. Identities in the
/// scalar variables S, t, rho0, rho_perp are q-independent; the pointwise
/// first-gap identity and the Simons rewrites are expanded in components.
std::vector<IdentityReport> check_gap_factorizations(int q, const IdentityOptions& opts = {});

/// Every group for q = 1..qmax. Checks run concurrently on `workers`
/// threads; the merged list is ordered by (q, group, identity).
std::vector<IdentityReport> run_identity_suite(int qmax, int workers = 1,
                                               const IdentityOptions& opts = {});

/// Names of the five identity groups in suite order.
const std::vector<std::string>& identity_groups();

}  // namespace mgl
