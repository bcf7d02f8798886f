#ifndef CDT_SOLVER_H_
#define CDT_SOLVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdt/dual.h"
#include "cdt/problem.h"

namespace cdt {

struct SolverConfig {
  int multistarts = 64;
  uint64_t seed = 0;
  int newton_iters = 100;
  double newton_tol = 1e-10;
  double box_lo = -10.0;
  double box_hi = 10.0;
  // Tolerance for the classification flags and the sign screen.
  double tol = 1e-8;
  double feasibility_tol = kDefaultFeasibilityTolerance;
  double snap_tol = 1e-10;
  double dedup_distance = 1e-6;
  int threads = 0;
};

// Enumeration guard: more constraints than this are refused (kGuard).
inline constexpr int kMaxEnumeratedConstraints = 12;

struct CriticalPoint {
  PrimalDualPoint point;  // sigma normalized
  std::string branch;

  bool classifiable = false;
  std::string not_classifiable_reason;

  double residual_x = 0.0;      // ||grad_x Xi||
  double residual_sigma = 0.0;  // ||grad_sigma Xi||
  double complementarity = 0.0; // |<lambda, grad_lambda Xi>|
  Vector grad_lambda;

  bool is_critical = false;
  bool is_KKT = false;
  bool is_J_LKKT = false;

  // Lagrangian side, when x is in X0.
  bool l_evaluated = false;
  Vector l_grad_lambda;  // g_j(x)
  double l_residual_x = 0.0;
  bool l_is_critical = false;
  bool l_is_J_LKKT = false;
  // J-LKKT of Xi and Q0^c inside M_ne(lambda): then grad_lambda L = grad_lambda Xi.
  bool l_relation_applies = false;

  // Dual side, when (lambda, sigma) is in T x int(I*).
  bool d_evaluated = false;
  bool d_is_critical = false;
  bool d_is_J_LKKT = false;

  std::optional<double> f_value;
  XMembership x_membership = XMembership::kOutside;
  FeasibilityReport feasibility;  // against the J the point was classified for
  MembershipVerdict membership;
};

CriticalPoint Classify(const Problem& problem, const IndexSet& J, const PrimalDualPoint& p,
                       double tol, double feasibility_tol = kDefaultFeasibilityTolerance);

struct SolveResult {
  std::vector<CriticalPoint> points;
  int branches = 0;
  int starts = 0;
  int converged = 0;
  int screened_out = 0;
};

// Active-set enumeration plus damped Newton. Each constraint index j gets a
// set of roles: multiplier free (solved for), or lambda_j = 0 with sigma_j
// pinned either by dXi/dlambda_j = 0 or by sigma_j = V_j'(Lambda_j(x)).
// Equality and quadratic indices have fewer roles. Throws CdtError(kGuard)
// for m > kMaxEnumeratedConstraints.
SolveResult FindCriticalPoints(const Problem& problem, const IndexSet& J,
                               const SolverConfig& config = {});

}  // namespace cdt

#endif  // CDT_SOLVER_H_
