#include "cdt/solver.h"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <string>

#include "cdt/errors.h"
#include "cdt/lagrangians.h"
#include "cdt/parallel.h"
#include "cdt/random.h"

namespace cdt {

namespace {

bool JLkktSigns(const IndexSet& J, const Vector& lambda, const Vector& grad_lambda, double tol) {
  for (int j = 1; j <= lambda.size(); ++j) {
    const double l = lambda(j - 1);
    const double d = grad_lambda(j - 1);
    if (Contains(J, j)) {
      if (std::abs(d) > tol) return false;
    } else if (l < -tol || d > tol || std::abs(l * d) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace

CriticalPoint Classify(const Problem& problem, const IndexSet& J, const PrimalDualPoint& raw,
                       double tol, double feasibility_tol) {
  CriticalPoint cp;
  cp.point = NormalizeSigma(problem, raw);
  const PrimalDualPoint& p = cp.point;
  const int m = problem.m();

  cp.f_value = EvalG(problem, 0, p.x);
  cp.x_membership = MembershipX0(problem, p.x);
  cp.feasibility = Feasible(problem, J, p.x, feasibility_tol);
  const DualPoint dp = DualPoint::Make(problem, p.lambda, p.sigma);
  cp.membership = Membership(problem, dp, J);

  for (int k = 0; k <= m; ++k) {
    if (!problem.term(k).V.conj_dom().InInterior(p.sigma(k))) {
      cp.not_classifiable_reason = "sigma_" + std::to_string(k) + " not in int dom V*";
      return cp;
    }
  }
  const XiGradients g = XiGradient(problem, p);
  cp.classifiable = true;
  cp.residual_x = g.x.norm();
  cp.residual_sigma = g.sigma->norm();
  cp.complementarity = std::abs(p.lambda.dot(g.lambda));
  cp.grad_lambda = g.lambda;

  const bool stationary = cp.residual_x <= tol && cp.residual_sigma <= tol;
  cp.is_critical = stationary && (m == 0 || g.lambda.cwiseAbs().maxCoeff() <= tol);
  cp.is_J_LKKT = stationary && JLkktSigns(J, p.lambda, g.lambda, tol);
  cp.is_KKT = stationary && JLkktSigns({}, p.lambda, g.lambda, tol);

  if (cp.x_membership == XMembership::kInX0) {
    const LagrangianEval L = LagrangianValueGrad(problem, p.x, p.lambda);
    cp.l_evaluated = true;
    cp.l_grad_lambda = L.grad_lambda;
    cp.l_residual_x = L.grad_x->norm();
    cp.l_is_critical =
        cp.l_residual_x <= tol && (m == 0 || L.grad_lambda.cwiseAbs().maxCoeff() <= tol);
    cp.l_is_J_LKKT = cp.l_residual_x <= tol && JLkktSigns(J, p.lambda, L.grad_lambda, tol);
  }
  const IndexSet nonzero = p.NonzeroMultipliers();
  bool covers = true;
  for (int j = 1; j <= m; ++j) {
    if (!problem.InQ(j) && !Contains(nonzero, j)) covers = false;
  }
  cp.l_relation_applies = cp.is_J_LKKT && covers;

  if (!dp.singular()) {
    const DualGradients dg = DualGradient(problem, dp);
    cp.d_evaluated = true;
    const bool d_stationary = dg.sigma.norm() <= tol;
    cp.d_is_critical = d_stationary && (m == 0 || dg.lambda.cwiseAbs().maxCoeff() <= tol);
    cp.d_is_J_LKKT = d_stationary && JLkktSigns(J, p.lambda, dg.lambda, tol);
  }
  return cp;
}

namespace {

enum class Role { kActive, kZeroQuadratic, kZeroCritical, kZeroInactive };

char RoleCode(Role r) {
  switch (r) {
    case Role::kActive: return 'a';
    case Role::kZeroQuadratic: return 'q';
    case Role::kZeroCritical: return 'c';
    case Role::kZeroInactive: return 'i';
  }
  return '?';
}

std::vector<Role> RolesFor(const Problem& problem, const IndexSet& J, int j) {
  const bool eq = Contains(J, j);
  if (problem.InQ(j)) {
    if (eq) return {Role::kActive};
    return {Role::kActive, Role::kZeroQuadratic};
  }
  if (eq) return {Role::kActive, Role::kZeroCritical};
  return {Role::kActive, Role::kZeroCritical, Role::kZeroInactive};
}

// Unknown layout of one branch: x first, then the free multipliers, then the
// free sigma_k (every k outside Q).
class BranchSystem {
 public:
  BranchSystem(const Problem& problem, std::vector<Role> roles)
      : problem_(problem), roles_(std::move(roles)) {
    const int n = problem.n();
    const int m = problem.m();
    lambda_slot_.assign(m + 1, -1);
    sigma_slot_.assign(m + 1, -1);
    int next = n;
    for (int j = 1; j <= m; ++j) {
      if (roles_[j - 1] == Role::kActive) lambda_slot_[j] = next++;
    }
    for (int k = 0; k <= m; ++k) {
      if (!problem.InQ(k)) sigma_slot_[k] = next++;
    }
    size_ = next;
    if (!problem.InQ(0)) sigma_rows_.push_back(0);
    for (int j = 1; j <= m; ++j) {
      const Role r = roles_[j - 1];
      if (!problem.InQ(j) && (r == Role::kActive || r == Role::kZeroInactive)) {
        sigma_rows_.push_back(j);
      }
      if (r == Role::kActive || r == Role::kZeroCritical) lambda_rows_.push_back(j);
    }
  }

  int size() const { return size_; }

  std::string Label() const {
    std::string s;
    for (Role r : roles_) s += RoleCode(r);
    return s.empty() ? "-" : s;
  }

  PrimalDualPoint Unpack(const Vector& u) const {
    const int n = problem_.n();
    const int m = problem_.m();
    PrimalDualPoint p{u.head(n), Vector::Zero(m), Vector::Zero(m + 1)};
    for (int j = 1; j <= m; ++j) {
      if (lambda_slot_[j] >= 0) p.lambda(j - 1) = u(lambda_slot_[j]);
    }
    for (int k = 0; k <= m; ++k) {
      if (sigma_slot_[k] >= 0) p.sigma(k) = u(sigma_slot_[k]);
    }
    return p;
  }

  Vector Start(Rng& rng, double lo, double hi) const {
    Vector u(size_);
    for (int i = 0; i < size_; ++i) u(i) = rng.Uniform(lo, hi);
    for (int k = 0; k <= problem_.m(); ++k) {
      if (sigma_slot_[k] < 0) continue;
      const Interval& dom = problem_.term(k).V.conj_dom();
      double a = std::max(lo, dom.lo);
      double b = std::min(hi, dom.hi);
      if (!(a < b)) {
        a = std::isfinite(dom.lo) ? dom.lo : dom.hi - (hi - lo);
        b = std::isfinite(dom.hi) ? dom.hi : dom.lo + (hi - lo);
      }
      const double margin = 1e-6 * (b - a);
      u(sigma_slot_[k]) = rng.Uniform(a + margin, b - margin);
    }
    return u;
  }

  // Residual; nullopt when some free sigma_k leaves int dom V_k*.
  std::optional<Vector> Residual(const Vector& u) const {
    const PrimalDualPoint p = Unpack(u);
    for (int k = 0; k <= problem_.m(); ++k) {
      if (sigma_slot_[k] >= 0 && !problem_.term(k).V.conj_dom().InInterior(p.sigma(k))) {
        return std::nullopt;
      }
    }
    const int n = problem_.n();
    const AssembledQuadratic a = Assemble(problem_, p.lambda, p.sigma);
    Vector r(size_);
    r.head(n) = a.G * p.x - a.F;
    int row = n;
    for (int k : sigma_rows_) {
      const ConstraintTerm& t = problem_.term(k);
      r(row++) = t.lambda_map.Value(p.x) - t.V.ConjDeriv(p.sigma(k));
    }
    for (int j : lambda_rows_) {
      const ConstraintTerm& t = problem_.term(j);
      r(row++) = t.q.Value(p.x) + p.sigma(j) * t.lambda_map.Value(p.x) - t.V.ConjValue(p.sigma(j));
    }
    if (!r.allFinite()) return std::nullopt;
    return r;
  }

  Matrix Jacobian(const Vector& u) const {
    const PrimalDualPoint p = Unpack(u);
    const int n = problem_.n();
    const int m = problem_.m();
    const AssembledQuadratic a = Assemble(problem_, p.lambda, p.sigma);
    Matrix Jm = Matrix::Zero(size_, size_);
    Jm.topLeftCorner(n, n) = a.G;
    for (int j = 1; j <= m; ++j) {
      if (lambda_slot_[j] < 0) continue;
      const ConstraintTerm& t = problem_.term(j);
      Vector col = t.q.Gradient(p.x);
      if (!t.is_quadratic) col += p.sigma(j) * t.lambda_map.Gradient(p.x);
      Jm.block(0, lambda_slot_[j], n, 1) = col;
    }
    for (int k = 0; k <= m; ++k) {
      if (sigma_slot_[k] < 0) continue;
      Jm.block(0, sigma_slot_[k], n, 1) =
          TermMultiplier(p.lambda, k) * problem_.term(k).lambda_map.Gradient(p.x);
    }
    int row = n;
    for (int k : sigma_rows_) {
      const ConstraintTerm& t = problem_.term(k);
      Jm.block(row, 0, 1, n) = t.lambda_map.Gradient(p.x).transpose();
      Jm(row, sigma_slot_[k]) = -t.V.ConjCurvature(p.sigma(k));
      ++row;
    }
    for (int j : lambda_rows_) {
      const ConstraintTerm& t = problem_.term(j);
      Vector grad = t.q.Gradient(p.x);
      if (!t.is_quadratic) {
        grad += p.sigma(j) * t.lambda_map.Gradient(p.x);
        Jm(row, sigma_slot_[j]) = t.lambda_map.Value(p.x) - t.V.ConjDeriv(p.sigma(j));
      }
      Jm.block(row, 0, 1, n) = grad.transpose();
      ++row;
    }
    return Jm;
  }

  std::optional<Vector> Newton(Vector u, const SolverConfig& config) const {
    auto r = Residual(u);
    if (!r) return std::nullopt;
    double norm = r->norm();
    for (int it = 0; it < config.newton_iters; ++it) {
      if (norm <= config.newton_tol) return u;
      const Matrix Jm = Jacobian(u);
      if (!Jm.allFinite()) return std::nullopt;
      Eigen::FullPivLU<Matrix> lu(Jm);
      Vector step = lu.rank() == size_ ? Vector(lu.solve(-*r))
                                       : Vector(Jm.completeOrthogonalDecomposition().solve(-*r));
      if (!step.allFinite()) return std::nullopt;
      bool accepted = false;
      for (double t = 1.0; t > 1e-10; t *= 0.5) {
        const Vector trial = u + t * step;
        auto rt = Residual(trial);
        if (rt && rt->norm() < (1.0 - 1e-4 * t) * norm) {
          u = trial;
          r = rt;
          norm = rt->norm();
          accepted = true;
          break;
        }
      }
      if (!accepted || u.norm() > 1e8) break;
    }
    // Rounding can hold the residual slightly above an absolute 1e-10 for
    // larger unknowns.
    if (norm <= config.newton_tol * (1.0 + u.cwiseAbs().maxCoeff())) return u;
    return std::nullopt;
  }

 private:
  const Problem& problem_;
  std::vector<Role> roles_;
  std::vector<int> lambda_slot_;
  std::vector<int> sigma_slot_;
  std::vector<int> sigma_rows_;
  std::vector<int> lambda_rows_;
  int size_ = 0;
};

Vector Flatten(const PrimalDualPoint& p) {
  Vector v(p.x.size() + p.lambda.size() + p.sigma.size());
  v << p.x, p.lambda, p.sigma;
  return v;
}

}  // namespace

SolveResult FindCriticalPoints(const Problem& problem, const IndexSet& J,
                               const SolverConfig& config) {
  const int m = problem.m();
  if (m > kMaxEnumeratedConstraints) {
    throw CdtError(ErrorKind::kGuard, "active-set enumeration limited to m <= " +
                                          std::to_string(kMaxEnumeratedConstraints) +
                                          " (got m=" + std::to_string(m) + ")");
  }
  if (config.multistarts < 1 || !(config.box_lo < config.box_hi) || !(config.tol > 0.0)) {
    throw CdtError(ErrorKind::kInvalidParameter, "bad solver configuration");
  }
  const IndexSet eq = NormalizeIndexSet(J, m);

  std::vector<std::vector<Role>> options(m);
  for (int j = 1; j <= m; ++j) options[j - 1] = RolesFor(problem, eq, j);
  std::vector<BranchSystem> branches;
  std::vector<size_t> digit(m, 0);
  while (true) {
    std::vector<Role> roles(m);
    for (int j = 0; j < m; ++j) roles[j] = options[j][digit[j]];
    branches.emplace_back(problem, roles);
    int pos = 0;
    while (pos < m && ++digit[pos] == options[pos].size()) digit[pos++] = 0;
    if (pos == m) break;
  }

  SolveResult result;
  result.branches = static_cast<int>(branches.size());
  const size_t starts = static_cast<size_t>(config.multistarts);
  const size_t tasks = branches.size() * starts;
  result.starts = static_cast<int>(tasks);
  std::vector<std::optional<PrimalDualPoint>> roots(tasks);
  ParallelFor(tasks, ResolveThreadCount(config.threads), [&](size_t task) {
    const size_t b = task / starts;
    const size_t s = task % starts;
    Rng rng(DeriveSeed(config.seed, b, s));
    const BranchSystem& sys = branches[b];
    if (auto u = sys.Newton(sys.Start(rng, config.box_lo, config.box_hi), config)) {
      PrimalDualPoint p = NormalizeSigma(problem, sys.Unpack(*u));
      for (int j = 0; j < m; ++j) {
        if (std::abs(p.lambda(j)) <= config.snap_tol) p.lambda(j) = 0.0;
      }
      roots[task] = std::move(p);
    }
  });

  struct Candidate {
    PrimalDualPoint point;
    Vector key;
    size_t branch;
  };
  std::vector<Candidate> candidates;
  for (size_t task = 0; task < tasks; ++task) {
    if (!roots[task]) continue;
    ++result.converged;
    Vector key = Flatten(*roots[task]);
    candidates.push_back({std::move(*roots[task]), std::move(key), task / starts});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    for (int i = 0; i < a.key.size(); ++i) {
      if (a.key(i) != b.key(i)) return a.key(i) < b.key(i);
    }
    return a.branch < b.branch;
  });
  std::vector<const Candidate*> unique;
  for (const Candidate& c : candidates) {
    bool seen = false;
    for (const Candidate* u : unique) {
      if ((u->key - c.key).norm() <= config.dedup_distance) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(&c);
  }
  for (const Candidate* c : unique) {
    CriticalPoint cp = Classify(problem, eq, c->point, config.tol, config.feasibility_tol);
    cp.branch = branches[c->branch].Label();
    const double total = cp.residual_x + cp.residual_sigma + cp.complementarity;
    if (!cp.classifiable || !(cp.is_critical || cp.is_J_LKKT) || total > config.tol) {
      ++result.screened_out;
      continue;
    }
    result.points.push_back(std::move(cp));
  }
  return result;
}

}  // namespace cdt
