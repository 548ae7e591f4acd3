#pragma once

// Both almost-Schur inequalities on a radial profile, and the integral
// identities their proof is assembled from.

#include <span>
#include <vector>

#include "schur/radial_geometry.hpp"
#include "schur/rational.hpp"
#include "schur/zonal.hpp"

namespace schur {

struct SharpConstants {
  Rational main;       // 4n(n-1)/(n-2)^2
  Rational corollary;  // n^2/(n-2)^2
};

/// Throws std::invalid_argument for n < 3.
SharpConstants sharp_constants(int n);

struct AuditOptions {
  double slack = 1e-9;            // relative slack on the inequalities
  double hypothesis_tol = 1e-9;   // Ric >= -hypothesis_tol * max|R|
  double einstein_floor = 1e-14;  // int |Ric°|^2 below floor * max|R|^2 * V is 0/0
};

struct AuditReport {
  int n = 0;
  double volume = 0.0;
  double Rbar = 0.0;
  double curvature_scale = 0.0;  // max |R|
  double lhs_main = 0.0;         // int (R - Rbar)^2
  double rhs_main_raw = 0.0;     // int |Ric°|^2
  double sharp_main = 0.0;
  double lhs_cor = 0.0;          // int |Ric - (Rbar/n) g|^2
  double sharp_cor = 0.0;
  double ratio = 0.0;            // lhs_main / rhs_main_raw, NaN when indeterminate
  bool ratio_indeterminate = false;
  double ric_min = 0.0;
  double tol_hyp = 0.0;
  bool hypothesis_holds = false;  // ric_min >= -tol_hyp
  bool main_satisfied = false;
  bool cor_satisfied = false;

  /// The inequality fails although its hypothesis holds.
  bool theorem_violated() const noexcept {
    return hypothesis_holds && !(main_satisfied && cor_satisfied);
  }
};

AuditReport audit(const RadialProfile& profile, const AuditOptions& options = {});
AuditReport audit(const RadialProfile& profile, const CurvatureField& curv,
                  const AuditOptions& options = {});

/// Both sides of an integral identity and the residual |lhs - rhs| / scale.
struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 0.0;
  double residual = 0.0;
};

/// int |Hess f|^2 = int (lap f)^2 - int Ric(grad f, grad f).
IdentityCheck verify_bochner(const RadialProfile& profile, const ZonalField& f);

/// int |Hess f - (lap f/n) g|^2 = ((n-1)/n) int (lap f)^2 - int Ric(grad f, grad f).
/// When `source` is given it replaces lap f in the (lap f)^2 term, as in the
/// proof where lap f = R - Rbar.
IdentityCheck verify_traceless_hessian(const RadialProfile& profile, const ZonalField& f,
                                       std::span<const double> source = {});

/// int (R - Rbar) lap f = (2n/(n-2)) int <Ric°, Hess f>. Normalized by the
/// Cauchy-Schwarz bound of the two sides, or by max|R| ||lap f||_1 on
/// Einstein profiles where both sides are pure noise.
IdentityCheck verify_weak_bianchi(const RadialProfile& profile, const ZonalField& f);

/// int |Ric - (c/n) g|^2 = int |Ric°|^2 + (1/n) int (R - c)^2, pointwise and
/// integrated, with c = Rbar. Residual is the worse of the two, relative.
IdentityCheck verify_split(const RadialProfile& profile);

/// The estimate chain of the proof, evaluated on the solution of lap f = R - Rbar.
struct ProofChain {
  double A = 0.0;              // int (R - Rbar)^2
  double B = 0.0;              // (2n/(n-2)) int <Ric°, Hess f>
  double cauchy_schwarz = 0.0; // (2n/(n-2)) ||Ric°|| ||Hess f - (lap f/n) g||
  double ricci_slack = 0.0;    // int Ric(grad f, grad f)
  double final_bound = 0.0;    // (2n/(n-2)) ||Ric°|| sqrt(((n-1)/n) A)
  double theorem_bound = 0.0;  // sharp_main int |Ric°|^2
  bool einstein = false;       // source treated as zero
  bool identity_holds = false; // |A - B| <= 1e-5 max(A, B)
  bool monotone = false;       // B <= CS <= final, only meaningful with Ric >= 0
  bool hypothesis_holds = false;
};

ProofChain proof_chain_report(const RadialProfile& profile, const AuditOptions& options = {});

}  // namespace schur
