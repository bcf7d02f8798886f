#ifndef CDT_PROBLEM_H_
#define CDT_PROBLEM_H_

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cdt/scalar_canonical.h"

namespace cdt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Sorted, duplicate-free list of constraint indices.
using IndexSet = std::vector<int>;

bool Contains(const IndexSet& set, int k);
IndexSet Intersect(const IndexSet& a, const IndexSet& b);
IndexSet Unite(const IndexSet& a, const IndexSet& b);
std::string FormatIndexSet(const IndexSet& set);

// q(x) = <x, A x>/2 - <b, x> + c. Mind the minus in front of b.
struct QuadraticFunction {
  Matrix A;
  Vector b;
  double c = 0.0;

  static QuadraticFunction Zero(int n);

  double Value(const Vector& x) const { return 0.5 * x.dot(A * x) - b.dot(x) + c; }
  Vector Gradient(const Vector& x) const { return A * x - b; }
  bool IsZero() const;
};

// One g_k = q_k + V_k(Lambda_k). For quadratic terms (k in Q) the canonical
// part is forced to Lambda_k = 0, V_k = t^2/2.
struct ConstraintTerm {
  QuadraticFunction q;
  QuadraticFunction lambda_map;
  LegendreFunction V;
  bool is_quadratic = false;
  // Conjugate domain some historical formulation declared for this term. Used
  // for reporting only; the solver always works on dom V*.
  std::optional<Interval> declared_conj_dom;
};

// The problem (P_J): minimize g_0 subject to g_j = 0 (j in J), g_j <= 0
// otherwise. lambda_0 is the constant 1 and is never stored anywhere.
class Problem {
 public:
  Problem(int n, std::vector<ConstraintTerm> terms, IndexSet J, std::string name = "");

  int n() const { return n_; }
  int m() const { return static_cast<int>(terms_.size()) - 1; }
  const std::string& name() const { return name_; }
  const ConstraintTerm& term(int k) const { return terms_.at(k); }
  const std::vector<ConstraintTerm>& terms() const { return terms_; }
  const IndexSet& J() const { return J_; }
  const IndexSet& Q() const { return Q_; }
  const IndexSet& Q0() const { return Q0_; }
  bool InQ(int k) const { return terms_.at(k).is_quadratic; }
  // Symmetrization and forcing notes produced while building the problem.
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Same data, different equality set.
  Problem WithJ(IndexSet J) const;

 private:
  int n_;
  std::vector<ConstraintTerm> terms_;
  IndexSet J_;
  IndexSet Q_;
  IndexSet Q0_;
  std::string name_;
  std::vector<std::string> warnings_;
};

// Validates and canonicalizes an equality set against 1..m.
IndexSet NormalizeIndexSet(IndexSet set, int m);

// g_k(x), or nullopt when Lambda_k(x) leaves dom V_k.
std::optional<double> EvalG(const Problem& problem, int k, const Vector& x);

enum class XMembership { kInX0, kInXOnly, kOutside };
std::string_view XMembershipName(XMembership membership);

// X0 uses the open interiors of the domains, X the domains themselves.
XMembership MembershipX0(const Problem& problem, const Vector& x);

struct ConstraintStatus {
  int j = 0;
  bool equality = false;
  std::optional<double> g;
  bool satisfied = false;
};

struct FeasibilityReport {
  std::vector<ConstraintStatus> constraints;
  bool in_X = false;
  bool feasible = false;  // x in X_J
  bool in_X_e = false;    // every g_j = 0
  bool in_X_i = false;    // every g_j <= 0
  std::string reason;
};

inline constexpr double kDefaultFeasibilityTolerance = 1e-8;

FeasibilityReport Feasible(const Problem& problem, const IndexSet& J, const Vector& x,
                           double tol = kDefaultFeasibilityTolerance);

}  // namespace cdt

#endif  // CDT_PROBLEM_H_
