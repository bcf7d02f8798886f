#include "cdt/certify.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cdt/errors.h"

namespace cdt {

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kUniqueGlobalMin: return "UNIQUE_GLOBAL_MIN";
    case Verdict::kGlobalMin: return "GLOBAL_MIN";
    case Verdict::kNoCertificate: return "NO_CERTIFICATE";
  }
  return "?";
}

namespace {

std::string Num(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

bool LambdaNonnegative(const Vector& lambda) {
  return lambda.size() == 0 || lambda.minCoeff() >= 0.0;
}

}  // namespace

Certificate CertifyGlobal(const Problem& problem, const IndexSet& J, const CriticalPoint& cp) {
  Certificate cert;
  const int m = problem.m();
  const PrimalDualPoint& p = cp.point;
  cert.solved_J = Intersect(J, problem.Q());
  IndexSet q0c;
  for (int j = 1; j <= m; ++j) {
    if (!problem.InQ(j)) q0c.push_back(j);
  }
  cert.feasible_for = Unite(J, q0c);

  auto& failed = cert.failed_hypotheses;
  if (!cp.classifiable) failed.push_back("sigma in int dom V* (" + cp.not_classifiable_reason + ")");
  if (cp.classifiable && !cp.is_J_LKKT) failed.push_back("J-LKKT point of Xi");
  if (!cp.membership.sigma_Q_zero) failed.push_back("sigma_k=0 for k in Q");
  for (int j : q0c) {
    const double l = p.lambda(j - 1);
    const std::string name = "lambda_" + std::to_string(j);
    if (l > kLambdaStrictness) continue;
    if (l > 0.0) {
      failed.push_back(name + ">0 (positivity indeterminate, " + name + "=" + Num(l) + ")");
    } else {
      failed.push_back(name + ">0 (" + name + "=" + Num(l) + ")");
    }
  }
  if (!cp.membership.G_psd) {
    failed.push_back("G psd (min eigenvalue " + Num(cp.membership.min_eigenvalue) + ")");
  }
  if (failed.empty()) {
    // Implied by the hypotheses; a failure here is numerical trouble.
    const FeasibilityReport feas = Feasible(problem, cert.feasible_for, p.x,
                                            kDefaultFeasibilityTolerance);
    if (!feas.feasible) failed.push_back("x in X_" + FormatIndexSet(cert.feasible_for) +
                                         " (" + feas.reason + ")");
  }
  if (failed.empty()) {
    cert.verdict = cp.membership.G_pd ? Verdict::kUniqueGlobalMin : Verdict::kGlobalMin;
    cert.value = cp.f_value;
    return cert;
  }

  // Historical global-optimality claims that fire here with a visible defect.
  const bool base = cp.classifiable && LambdaNonnegative(p.lambda) &&
                    cp.membership.sigma_in_conj_dom && cp.x_membership != XMembership::kOutside;
  const FeasibilityReport inequality = Feasible(problem, {}, p.x, kDefaultFeasibilityTolerance);
  const FeasibilityReport with_J = Feasible(problem, J, p.x, kDefaultFeasibilityTolerance);
  if (base && cp.is_critical && cp.membership.G_psd && J.empty() && !inequality.in_X_i) {
    cert.wrongly_accepted_by.push_back(
        "GaoRuanSherali-Th2 (critical, lambda>=0, G psd; yet x not in X_i: " + inequality.reason +
        ")");
  }
  if (base && cp.is_critical && cp.membership.latorre_gao_Sa_plus && !with_J.feasible) {
    cert.wrongly_accepted_by.push_back(
        "LatorreGao-Th2 (critical, lambda>=0, in S_a+; yet x not in X_J: " + with_J.reason + ")");
  }
  if (base && cp.is_KKT && J.empty() && (!inequality.in_X_i || !cp.l_is_J_LKKT)) {
    cert.wrongly_accepted_by.push_back(
        "RuanGao-Th3 (KKT point of Xi, lambda>=0; yet x is not a KKT point of P_i" +
        (inequality.in_X_i ? std::string(")") : ": " + inequality.reason + ")"));
  }
  return cert;
}

PerfectDualityReport PerfectDualityCheck(const Problem& problem, const CriticalPoint& cp,
                                         double tol) {
  PerfectDualityReport report;
  if (!cp.classifiable) {
    report.reason = "sigma outside int dom V*";
    return report;
  }
  const PrimalDualPoint& p = cp.point;
  const XiGradients g = XiGradient(problem, p);
  if (g.x.norm() > tol || std::abs((*g.sigma)(0)) > tol ||
      std::abs(p.lambda.dot(g.lambda)) > tol) {
    report.reason = "preconditions unmet (grad_x Xi, dXi/dsigma_0, <lambda, grad_lambda Xi>)";
    return report;
  }
  if (!cp.f_value) {
    report.reason = "f undefined at x";
    return report;
  }
  const DualPoint dp = DualPoint::Make(problem, p.lambda, p.sigma);
  if (!dp.f_in_range()) {
    report.reason = "F not in Im G";
    return report;
  }
  report.applicable = true;
  report.f = *cp.f_value;
  report.xi = XiValue(problem, p);
  report.d = DualValue(problem, dp);
  report.max_gap = std::max({std::abs(report.f - report.xi), std::abs(report.xi - report.d),
                             std::abs(report.f - report.d)});
  report.passed = report.max_gap <= tol * (1.0 + std::abs(report.f));
  return report;
}

}  // namespace cdt
