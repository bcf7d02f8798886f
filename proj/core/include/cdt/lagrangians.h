#ifndef CDT_LAGRANGIANS_H_
#define CDT_LAGRANGIANS_H_

#include <optional>
#include <vector>

#include "cdt/problem.h"

namespace cdt {

// (x, lambda, sigma) with lambda in R^m (lambda_0 = 1 is implicit) and
// sigma = (sigma_0, ..., sigma_m).
struct PrimalDualPoint {
  Vector x;
  Vector lambda;
  Vector sigma;

  // M_ne(lambda) = {j in 1..m : lambda_j != 0}.
  IndexSet NonzeroMultipliers() const;
};

// Multiplier of term k with the convention lambda_0 = 1.
inline double TermMultiplier(const Vector& lambda, int k) { return k == 0 ? 1.0 : lambda(k - 1); }

struct AssembledQuadratic {
  Matrix G;
  Vector F;
  double E = 0.0;
};

// G = sum_k lambda_k (A_k + sigma_k C_k), F = sum_k lambda_k (b_k + sigma_k d_k),
// E = sum_k lambda_k (c_k + sigma_k e_k).
AssembledQuadratic Assemble(const Problem& problem, const Vector& lambda, const Vector& sigma);

// sum_k lambda_k V_k*(sigma_k). Throws CdtError(kDomainExit) if some sigma_k
// leaves dom V_k*.
double ConjugateSum(const Problem& problem, const Vector& lambda, const Vector& sigma);

double XiValue(const Problem& problem, const PrimalDualPoint& p);

struct XiGradients {
  Vector x;
  Vector lambda;
  // Missing when some sigma_k sits on the boundary of dom V_k*.
  std::optional<Vector> sigma;
};

// d/dlambda_j = q_j + sigma_j Lambda_j - V_j*(sigma_j),
// d/dsigma_k = lambda_k (Lambda_k - V_k*'(sigma_k)).
XiGradients XiGradient(const Problem& problem, const PrimalDualPoint& p);

struct LagrangianEval {
  double value = 0.0;
  // Missing for x in X \ X0.
  std::optional<Vector> grad_x;
  Vector grad_lambda;  // g_j(x)
};

// L(x, lambda) = sum_k lambda_k g_k(x). Throws CdtError(kDomainExit) for x
// outside X.
LagrangianEval LagrangianValueGrad(const Problem& problem, const Vector& x, const Vector& lambda);

struct RelationReport {
  // Per k in M_ne^0(lambda) \ Q: does sigma_k = V_k'(Lambda_k(x)) hold?
  std::vector<int> checked;
  std::vector<bool> sigma_matches;
  bool all_sigma_match = true;
  double value_gap = 0.0;    // |L - Xi|
  double grad_x_gap = 0.0;   // ||grad_x L - grad_x Xi||; NaN when undefined
  // dL/dlambda_j - dXi/dlambda_j; never below -tol, ~0 on M_ne(lambda) u Q0.
  Vector lambda_slack;
  bool slack_signs_ok = true;
};

RelationReport CheckLXiRelations(const Problem& problem, const PrimalDualPoint& p, double tol);

}  // namespace cdt

#endif  // CDT_LAGRANGIANS_H_
