#include "cdt/dual.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>

#include "cdt/errors.h"

namespace cdt {

DualPoint DualPoint::Make(const Problem& problem, Vector lambda, Vector sigma) {
  DualPoint dp;
  dp.lambda_ = std::move(lambda);
  dp.sigma_ = std::move(sigma);
  dp.assembled_ = Assemble(problem, dp.lambda_, dp.sigma_);
  const Matrix& G = dp.assembled_.G;
  const Vector& F = dp.assembled_.F;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(G);
  const Vector& w = eig.eigenvalues();
  dp.min_eigenvalue_ = w.minCoeff();
  dp.max_abs_eigenvalue_ = w.cwiseAbs().maxCoeff();
  const double cut = kRankCutoff * dp.max_abs_eigenvalue_;
  dp.singular_ = dp.max_abs_eigenvalue_ == 0.0 || w.cwiseAbs().minCoeff() <= cut;
  // Pseudo-inverse through the spectral decomposition; the true inverse on T.
  const Matrix& V = eig.eigenvectors();
  Vector coeffs = V.transpose() * F;
  for (int i = 0; i < coeffs.size(); ++i) {
    coeffs(i) = (dp.max_abs_eigenvalue_ > 0.0 && std::abs(w(i)) > cut) ? coeffs(i) / w(i) : 0.0;
  }
  dp.solution_ = V * coeffs;
  if (!dp.singular_) {
    // One refinement step tightens the residual for ill-conditioned G.
    dp.solution_ += G.fullPivLu().solve(F - G * dp.solution_);
  }
  dp.residual_ = (G * dp.solution_ - F).norm();
  dp.f_in_range_ = dp.residual_ <= kColumnSpaceTolerance * (1.0 + F.norm());
  return dp;
}

Vector NormalizeSigma(const Problem& problem, const Vector& sigma) {
  Vector out = sigma;
  for (int k : problem.Q()) out(k) = 0.0;
  return out;
}

PrimalDualPoint NormalizeSigma(const Problem& problem, const PrimalDualPoint& p) {
  return {p.x, p.lambda, NormalizeSigma(problem, p.sigma)};
}

Vector XiPoint(const Problem&, const DualPoint& dp) {
  if (!dp.f_in_range()) {
    throw CdtError(ErrorKind::kNotInTcol, "F(lambda,sigma) is not in the range of G(lambda,sigma)");
  }
  return dp.solution();
}

double DualValue(const Problem& problem, const DualPoint& dp) {
  const Vector x = XiPoint(problem, dp);
  const AssembledQuadratic& a = dp.assembled();
  return -0.5 * a.F.dot(x) + a.E - ConjugateSum(problem, dp.lambda(), dp.sigma());
}

DualGradients DualGradient(const Problem& problem, const DualPoint& dp) {
  if (dp.singular()) {
    throw CdtError(ErrorKind::kUndefinedGradient, "G(lambda,sigma) is singular");
  }
  const PrimalDualPoint p{dp.solution(), dp.lambda(), dp.sigma()};
  XiGradients g = XiGradient(problem, p);
  if (!g.sigma) {
    throw CdtError(ErrorKind::kUndefinedGradient, "sigma on the boundary of dom V*");
  }
  return {std::move(g.lambda), std::move(*g.sigma)};
}

MembershipVerdict Membership(const Problem& problem, const DualPoint& dp, const IndexSet& J) {
  MembershipVerdict v;
  const Vector& lambda = dp.lambda();
  const Vector& sigma = dp.sigma();
  const int m = problem.m();

  v.sigma_in_conj_dom = true;
  v.sigma_in_declared_dom = true;
  for (int k = 0; k <= m; ++k) {
    const ConstraintTerm& t = problem.term(k);
    const bool in_dom = t.V.conj_dom().Contains(sigma(k));
    v.sigma_in_conj_dom = v.sigma_in_conj_dom && in_dom;
    const Interval& declared = t.declared_conj_dom ? *t.declared_conj_dom : t.V.conj_dom();
    v.sigma_in_declared_dom = v.sigma_in_declared_dom && declared.Contains(sigma(k));
  }
  v.sigma_Q_zero = true;
  for (int k : problem.Q()) v.sigma_Q_zero = v.sigma_Q_zero && sigma(k) == 0.0;

  const IndexSet JQ = Intersect(J, problem.Q());
  v.in_Gamma_J = v.in_Gamma_JQ = v.lambda_nonnegative = true;
  bool all_positive = true;
  bool all_nonzero = true;
  bool J_nonzero = true;
  for (int j = 1; j <= m; ++j) {
    const double l = lambda(j - 1);
    const bool nonneg = l >= 0.0;
    if (!Contains(J, j)) v.in_Gamma_J = v.in_Gamma_J && nonneg;
    if (!Contains(JQ, j)) v.in_Gamma_JQ = v.in_Gamma_JQ && nonneg;
    v.lambda_nonnegative = v.lambda_nonnegative && nonneg;
    all_positive = all_positive && l > 0.0;
    all_nonzero = all_nonzero && l != 0.0;
    if (Contains(J, j)) J_nonzero = J_nonzero && l != 0.0;
  }

  v.min_eigenvalue = dp.min_eigenvalue();
  v.G_psd = dp.min_eigenvalue() >= -kPsdTolerance;
  v.G_pd = dp.min_eigenvalue() >= kPsdTolerance;
  v.nonsingular = !dp.singular();
  v.in_T = v.sigma_in_conj_dom && v.nonsingular;
  v.in_T_col = v.sigma_in_conj_dom && dp.f_in_range();
  v.in_T_Q = v.in_T && v.sigma_Q_zero;
  v.in_T_Q_col = v.in_T_col && v.sigma_Q_zero;
  v.in_T_QJ_plus = v.in_T_Q && v.in_Gamma_JQ && v.G_pd;
  v.in_T_QJ_col_plus = v.in_T_Q_col && v.in_Gamma_JQ && v.G_psd;
  v.in_T_plus = v.in_T && v.lambda_nonnegative && v.G_pd;
  v.in_T_col_plus = v.in_T_col && v.lambda_nonnegative && v.G_psd;

  v.latorre_gao_Sa_plus = v.in_T_plus && J_nonzero;
  v.ruan_gao_Sa_plus = v.in_T_plus && all_nonzero;
  v.morales_gao_Sa_plus = v.sigma_in_declared_dom && v.nonsingular && v.G_pd;
  v.morales_gao_Sc_plus = v.morales_gao_Sa_plus && all_positive;
  return v;
}

}  // namespace cdt
