#include "cdt/lagrangians.h"

#include <cmath>
#include <limits>
#include <string>

#include "cdt/errors.h"

namespace cdt {

IndexSet PrimalDualPoint::NonzeroMultipliers() const {
  IndexSet out;
  for (int j = 1; j <= lambda.size(); ++j) {
    if (lambda(j - 1) != 0.0) out.push_back(j);
  }
  return out;
}

namespace {

void CheckSizes(const Problem& problem, const Vector& lambda, const Vector& sigma) {
  if (lambda.size() != problem.m() || sigma.size() != problem.m() + 1) {
    throw CdtError(ErrorKind::kInvalidParameter,
                   "lambda must have m entries and sigma m+1 entries");
  }
}

}  // namespace

AssembledQuadratic Assemble(const Problem& problem, const Vector& lambda, const Vector& sigma) {
  CheckSizes(problem, lambda, sigma);
  const int n = problem.n();
  AssembledQuadratic out{Matrix::Zero(n, n), Vector::Zero(n), 0.0};
  for (int k = 0; k <= problem.m(); ++k) {
    const ConstraintTerm& t = problem.term(k);
    const double lk = TermMultiplier(lambda, k);
    out.G += lk * t.q.A;
    out.F += lk * t.q.b;
    out.E += lk * t.q.c;
    // C_k = 0 on Q, so sigma_k never enters there.
    if (t.is_quadratic) continue;
    const double ls = lk * sigma(k);
    out.G += ls * t.lambda_map.A;
    out.F += ls * t.lambda_map.b;
    out.E += ls * t.lambda_map.c;
  }
  return out;
}

double ConjugateSum(const Problem& problem, const Vector& lambda, const Vector& sigma) {
  CheckSizes(problem, lambda, sigma);
  double sum = 0.0;
  for (int k = 0; k <= problem.m(); ++k) {
    const LegendreFunction& V = problem.term(k).V;
    if (!V.conj_dom().Contains(sigma(k))) {
      throw CdtError(ErrorKind::kDomainExit,
                     "sigma_" + std::to_string(k) + " outside " + V.conj_dom().ToString());
    }
    const double lk = TermMultiplier(lambda, k);
    if (lk != 0.0) sum += lk * V.ConjValue(sigma(k));
  }
  return sum;
}

double XiValue(const Problem& problem, const PrimalDualPoint& p) {
  const AssembledQuadratic a = Assemble(problem, p.lambda, p.sigma);
  const double conj = ConjugateSum(problem, p.lambda, p.sigma);
  return 0.5 * p.x.dot(a.G * p.x) - a.F.dot(p.x) + a.E - conj;
}

XiGradients XiGradient(const Problem& problem, const PrimalDualPoint& p) {
  const AssembledQuadratic a = Assemble(problem, p.lambda, p.sigma);
  XiGradients out;
  out.x = a.G * p.x - a.F;
  out.lambda.resize(problem.m());
  bool interior = true;
  for (int k = 0; k <= problem.m(); ++k) {
    const LegendreFunction& V = problem.term(k).V;
    if (!V.conj_dom().Contains(p.sigma(k))) {
      throw CdtError(ErrorKind::kDomainExit,
                     "sigma_" + std::to_string(k) + " outside " + V.conj_dom().ToString());
    }
    if (!V.conj_dom().InInterior(p.sigma(k))) interior = false;
  }
  for (int j = 1; j <= problem.m(); ++j) {
    const ConstraintTerm& t = problem.term(j);
    out.lambda(j - 1) =
        t.q.Value(p.x) + p.sigma(j) * t.lambda_map.Value(p.x) - t.V.ConjValue(p.sigma(j));
  }
  if (interior) {
    Vector gs(problem.m() + 1);
    for (int k = 0; k <= problem.m(); ++k) {
      const ConstraintTerm& t = problem.term(k);
      gs(k) = TermMultiplier(p.lambda, k) * (t.lambda_map.Value(p.x) - t.V.ConjDeriv(p.sigma(k)));
    }
    out.sigma = gs;
  }
  return out;
}

LagrangianEval LagrangianValueGrad(const Problem& problem, const Vector& x, const Vector& lambda) {
  if (lambda.size() != problem.m()) {
    throw CdtError(ErrorKind::kInvalidParameter, "lambda must have m entries");
  }
  LagrangianEval out;
  out.grad_lambda.resize(problem.m());
  Vector grad = Vector::Zero(problem.n());
  bool interior = true;
  for (int k = 0; k <= problem.m(); ++k) {
    const ConstraintTerm& t = problem.term(k);
    const auto g = EvalG(problem, k, x);
    if (!g) {
      throw CdtError(ErrorKind::kDomainExit,
                     "Lambda_" + std::to_string(k) + "(x) outside dom V_" + std::to_string(k));
    }
    const double lk = TermMultiplier(lambda, k);
    if (k > 0) out.grad_lambda(k - 1) = *g;
    if (lk != 0.0) out.value += lk * *g;
    Vector gk = t.q.Gradient(x);
    if (!t.is_quadratic) {
      const double s = t.lambda_map.Value(x);
      if (!t.V.dom().InInterior(s)) {
        interior = false;
        continue;
      }
      gk += t.V.Deriv(s) * t.lambda_map.Gradient(x);
    }
    grad += lk * gk;
  }
  if (interior) out.grad_x = grad;
  return out;
}

RelationReport CheckLXiRelations(const Problem& problem, const PrimalDualPoint& p, double tol) {
  RelationReport report;
  const LagrangianEval L = LagrangianValueGrad(problem, p.x, p.lambda);
  const double xi = XiValue(problem, p);
  const XiGradients dxi = XiGradient(problem, p);
  for (int k = 0; k <= problem.m(); ++k) {
    if (problem.InQ(k) || TermMultiplier(p.lambda, k) == 0.0) continue;
    const ConstraintTerm& t = problem.term(k);
    const double s = t.lambda_map.Value(p.x);
    const bool ok = t.V.dom().InInterior(s) &&
                    std::abs(t.V.Deriv(s) - p.sigma(k)) <= tol * (1.0 + std::abs(p.sigma(k)));
    report.checked.push_back(k);
    report.sigma_matches.push_back(ok);
    report.all_sigma_match = report.all_sigma_match && ok;
  }
  report.value_gap = std::abs(L.value - xi);
  report.grad_x_gap = L.grad_x ? (*L.grad_x - dxi.x).norm()
                               : std::numeric_limits<double>::quiet_NaN();
  report.lambda_slack = L.grad_lambda - dxi.lambda;
  const IndexSet nonzero = p.NonzeroMultipliers();
  for (int j = 1; j <= problem.m(); ++j) {
    const double slack = report.lambda_slack(j - 1);
    const double scale = tol * (1.0 + std::abs(L.grad_lambda(j - 1)));
    if (slack < -scale) report.slack_signs_ok = false;
    if ((Contains(nonzero, j) || problem.InQ(j)) && report.all_sigma_match &&
        std::abs(slack) > scale) {
      report.slack_signs_ok = false;
    }
  }
  return report;
}

}  // namespace cdt
