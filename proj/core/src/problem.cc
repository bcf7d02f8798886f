#include "cdt/problem.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "cdt/errors.h"

namespace cdt {

bool Contains(const IndexSet& set, int k) {
  return std::binary_search(set.begin(), set.end(), k);
}

IndexSet Intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet Unite(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string FormatIndexSet(const IndexSet& set) {
  std::string out = "{";
  for (size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(set[i]);
  }
  return out + "}";
}

QuadraticFunction QuadraticFunction::Zero(int n) {
  return {Matrix::Zero(n, n), Vector::Zero(n), 0.0};
}

bool QuadraticFunction::IsZero() const {
  return A.isZero(0.0) && b.isZero(0.0) && c == 0.0;
}

IndexSet NormalizeIndexSet(IndexSet set, int m) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (int j : set) {
    if (j < 1 || j > m) {
      throw CdtError(ErrorKind::kInvalidParameter,
                     "equality index " + std::to_string(j) + " is outside 1.." +
                         std::to_string(m));
    }
  }
  return set;
}

namespace {

void CheckShape(const QuadraticFunction& f, int n, int k, const char* what) {
  if (f.A.rows() != n || f.A.cols() != n || f.b.size() != n) {
    throw CdtError(ErrorKind::kInvalidParameter,
                   std::string("term ") + std::to_string(k) + ": " + what +
                       " has the wrong dimension");
  }
  if (!f.A.allFinite() || !f.b.allFinite() || !std::isfinite(f.c)) {
    throw CdtError(ErrorKind::kInvalidParameter,
                   std::string("term ") + std::to_string(k) + ": " + what +
                       " has non-finite entries");
  }
}

// The quadratic form only sees (A + A^T)/2.
bool Symmetrize(Matrix& A) {
  if (A == A.transpose()) return false;
  A = (0.5 * (A + A.transpose())).eval();
  return true;
}

}  // namespace

Problem::Problem(int n, std::vector<ConstraintTerm> terms, IndexSet J, std::string name)
    : n_(n), terms_(std::move(terms)), name_(std::move(name)) {
  if (n < 1) throw CdtError(ErrorKind::kInvalidParameter, "dimension n must be >= 1");
  if (terms_.empty()) {
    throw CdtError(ErrorKind::kInvalidParameter, "a problem needs at least the objective term");
  }
  J_ = NormalizeIndexSet(std::move(J), m());
  for (int k = 0; k <= m(); ++k) {
    ConstraintTerm& t = terms_[k];
    CheckShape(t.q, n, k, "q");
    if (t.is_quadratic) {
      if (!t.lambda_map.IsZero() || !t.V.quadratic_params() ||
          t.V.quadratic_params()->a != 1.0 || t.V.quadratic_params()->shift != 0.0) {
        warnings_.push_back("term " + std::to_string(k) +
                            " is flagged quadratic; its canonical part was reset to zero");
      }
      t.lambda_map = QuadraticFunction::Zero(n);
      t.V = QuadraticLegendre(1.0, 0.0);
    }
    CheckShape(t.lambda_map, n, k, "Lambda");
    if (Symmetrize(t.q.A)) {
      warnings_.push_back("term " + std::to_string(k) + ": A was not symmetric, using (A+A^T)/2");
    }
    if (Symmetrize(t.lambda_map.A)) {
      warnings_.push_back("term " + std::to_string(k) + ": C was not symmetric, using (C+C^T)/2");
    }
    if (t.is_quadratic) {
      Q_.push_back(k);
      if (k > 0) Q0_.push_back(k);
    }
  }
}

Problem Problem::WithJ(IndexSet J) const {
  Problem copy = *this;
  copy.J_ = NormalizeIndexSet(std::move(J), m());
  return copy;
}

std::optional<double> EvalG(const Problem& problem, int k, const Vector& x) {
  const ConstraintTerm& t = problem.term(k);
  const double q = t.q.Value(x);
  if (t.is_quadratic) return q;
  const double s = t.lambda_map.Value(x);
  if (!t.V.dom().Contains(s)) return std::nullopt;
  return q + t.V.Value(s);
}

std::string_view XMembershipName(XMembership membership) {
  switch (membership) {
    case XMembership::kInX0: return "in_X0";
    case XMembership::kInXOnly: return "in_X_only";
    case XMembership::kOutside: return "outside";
  }
  return "?";
}

XMembership MembershipX0(const Problem& problem, const Vector& x) {
  bool interior = true;
  for (const ConstraintTerm& t : problem.terms()) {
    if (t.is_quadratic) continue;
    const double s = t.lambda_map.Value(x);
    if (!t.V.dom().Contains(s)) return XMembership::kOutside;
    if (!t.V.dom().InInterior(s)) interior = false;
  }
  return interior ? XMembership::kInX0 : XMembership::kInXOnly;
}

FeasibilityReport Feasible(const Problem& problem, const IndexSet& J, const Vector& x,
                           double tol) {
  if (!(tol >= 0.0)) throw CdtError(ErrorKind::kInvalidParameter, "tolerance must be >= 0");
  FeasibilityReport report;
  report.in_X = EvalG(problem, 0, x).has_value();
  if (!report.in_X) report.reason = "objective undefined (Lambda_0(x) outside dom V_0)";
  report.feasible = report.in_X;
  report.in_X_e = report.in_X;
  report.in_X_i = report.in_X;
  for (int j = 1; j <= problem.m(); ++j) {
    ConstraintStatus status;
    status.j = j;
    status.equality = Contains(J, j);
    status.g = EvalG(problem, j, x);
    if (!status.g) {
      report.in_X = report.feasible = report.in_X_e = report.in_X_i = false;
      if (report.reason.empty()) {
        report.reason = "g_" + std::to_string(j) + " undefined (domain exit)";
      }
    } else {
      const double g = *status.g;
      const bool zero = std::abs(g) <= tol;
      const bool nonpositive = g <= tol;
      status.satisfied = status.equality ? zero : nonpositive;
      report.in_X_e = report.in_X_e && zero;
      report.in_X_i = report.in_X_i && nonpositive;
      if (!status.satisfied) {
        report.feasible = false;
        if (report.reason.empty()) {
          std::ostringstream why;
          why.precision(10);
          why << "g_" << j << "=" << g << (status.equality ? " != 0" : " > 0");
          report.reason = why.str();
        }
      }
    }
    report.constraints.push_back(status);
  }
  return report;
}

}  // namespace cdt
