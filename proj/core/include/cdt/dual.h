#ifndef CDT_DUAL_H_
#define CDT_DUAL_H_

#include <optional>

#include "cdt/lagrangians.h"

namespace cdt {

inline constexpr double kRankCutoff = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kColumnSpaceTolerance = 1e-8;

// (lambda, sigma) with G, F, E and the spectral data of G computed once.
class DualPoint {
 public:
  static DualPoint Make(const Problem& problem, Vector lambda, Vector sigma);

  const Vector& lambda() const { return lambda_; }
  const Vector& sigma() const { return sigma_; }
  const AssembledQuadratic& assembled() const { return assembled_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  double max_abs_eigenvalue() const { return max_abs_eigenvalue_; }
  // Smallest |eigenvalue| <= kRankCutoff * largest.
  bool singular() const { return singular_; }
  // Min-norm solution of G x = F and its residual ||G x - F||.
  const Vector& solution() const { return solution_; }
  double residual() const { return residual_; }
  bool f_in_range() const { return f_in_range_; }
  // The solution came from the pseudo-inverse of a singular G.
  bool min_norm() const { return singular_; }

 private:
  DualPoint() = default;

  Vector lambda_;
  Vector sigma_;
  AssembledQuadratic assembled_;
  double min_eigenvalue_ = 0.0;
  double max_abs_eigenvalue_ = 0.0;
  bool singular_ = true;
  Vector solution_;
  double residual_ = 0.0;
  bool f_in_range_ = false;
};

// sigma_k := 0 for k in Q. Idempotent.
Vector NormalizeSigma(const Problem& problem, const Vector& sigma);
PrimalDualPoint NormalizeSigma(const Problem& problem, const PrimalDualPoint& p);

// xi(lambda, sigma) = G^{-1} F, or the min-norm solution on T_col \ T.
// Throws CdtError(kNotInTcol) when F is not in Im G.
Vector XiPoint(const Problem& problem, const DualPoint& dp);

// D = -<F, xi>/2 + E - sum_k lambda_k V_k*(sigma_k).
double DualValue(const Problem& problem, const DualPoint& dp);

struct DualGradients {
  Vector lambda;
  Vector sigma;
};

// Throws CdtError(kUndefinedGradient) outside T x int(I*).
DualGradients DualGradient(const Problem& problem, const DualPoint& dp);

struct MembershipVerdict {
  bool sigma_in_conj_dom = false;  // sigma in I*
  bool nonsingular = false;
  bool in_T = false;
  bool in_T_col = false;
  bool sigma_Q_zero = false;
  bool in_Gamma_J = false;
  bool in_Gamma_JQ = false;  // Gamma_{J n Q}
  bool lambda_nonnegative = false;
  bool G_psd = false;
  bool G_pd = false;
  double min_eigenvalue = 0.0;
  bool in_T_Q = false;
  bool in_T_Q_col = false;
  bool in_T_QJ_plus = false;
  bool in_T_QJ_col_plus = false;
  bool in_T_plus = false;
  bool in_T_col_plus = false;
  // Historical dual feasible sets, as published.
  bool sigma_in_declared_dom = false;
  bool latorre_gao_Sa_plus = false;  // T+ and J subset of M_ne(lambda)
  bool ruan_gao_Sa_plus = false;     // T+ and M_ne(lambda) = 1..m
  bool morales_gao_Sa_plus = false;  // G > 0 with sigma in the declared domain
  bool morales_gao_Sc_plus = false;  // additionally every lambda_j > 0
};

MembershipVerdict Membership(const Problem& problem, const DualPoint& dp, const IndexSet& J);

}  // namespace cdt

#endif  // CDT_DUAL_H_
