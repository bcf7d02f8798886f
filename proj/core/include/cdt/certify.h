#ifndef CDT_CERTIFY_H_
#define CDT_CERTIFY_H_

#include <string>
#include <string_view>
#include <vector>

#include "cdt/solver.h"

namespace cdt {

enum class Verdict { kUniqueGlobalMin, kGlobalMin, kNoCertificate };
std::string_view VerdictName(Verdict verdict);

inline constexpr double kLambdaStrictness = 1e-10;

struct Certificate {
  Verdict verdict = Verdict::kNoCertificate;
  // The point solves (P_{J n Q}); x is moreover in X_{J u Q0^c}.
  IndexSet solved_J;
  IndexSet feasible_for;
  std::optional<double> value;
  std::vector<std::string> failed_hypotheses;
  // Published theorems whose hypotheses hold here although their conclusion
  // visibly fails.
  std::vector<std::string> wrongly_accepted_by;
};

// Global optimality under the corrected hypotheses: J-LKKT point of Xi,
// normalized sigma in int(I*), lambda_j > 0 on Q0^c, G psd (pd for
// uniqueness).
Certificate CertifyGlobal(const Problem& problem, const IndexSet& J, const CriticalPoint& cp);

struct PerfectDualityReport {
  bool applicable = false;
  std::string reason;
  double f = 0.0;
  double xi = 0.0;
  double d = 0.0;
  double max_gap = 0.0;
  bool passed = false;
};

// f(x) = Xi(x, lambda, sigma) = D(lambda, sigma) when grad_x Xi = 0,
// dXi/dsigma_0 = 0 and <lambda, grad_lambda Xi> = 0 within tol.
PerfectDualityReport PerfectDualityCheck(const Problem& problem, const CriticalPoint& cp,
                                         double tol);

}  // namespace cdt

#endif  // CDT_CERTIFY_H_
