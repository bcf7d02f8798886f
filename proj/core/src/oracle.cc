#include "cdt/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "cdt/errors.h"
#include "cdt/parallel.h"

namespace cdt {

namespace {

constexpr double kExactTolerance = 1e-10;

struct NodeEval {
  bool feasible = false;
  double f = kInf;
  double band = 0.0;
};

class GridEvaluator {
 public:
  GridEvaluator(const Problem& problem, const IndexSet& J, std::optional<double> fixed_band)
      : problem_(problem), J_(J), fixed_band_(fixed_band) {}

  // Feasibility with inequalities exact and equalities within the band.
  NodeEval Evaluate(const Vector& x, double step) const {
    NodeEval out;
    const auto f = EvalG(problem_, 0, x);
    if (!f) return out;
    for (int j = 1; j <= problem_.m(); ++j) {
      const auto g = EvalG(problem_, j, x);
      if (!g) return out;
      if (Contains(J_, j)) {
        const double band = fixed_band_ ? *fixed_band_ : 2.0 * Slope(j, x, step) * step;
        if (std::abs(*g) > band) return out;
        out.band = std::max(out.band, band);
      } else if (*g > 0.0) {
        return out;
      }
    }
    out.feasible = true;
    out.f = *f;
    return out;
  }

  // Exact feasibility, used for polished candidates.
  std::optional<double> ExactValue(const Vector& x) const {
    const auto f = EvalG(problem_, 0, x);
    if (!f) return std::nullopt;
    for (int j = 1; j <= problem_.m(); ++j) {
      const auto g = EvalG(problem_, j, x);
      if (!g) return std::nullopt;
      const double scale = kExactTolerance * (1.0 + std::abs(*f));
      // Inequalities are held exactly so the polished value never undercuts
      // the true minimum from outside X_J.
      if (Contains(J_, j) ? std::abs(*g) > scale : *g > 0.0) return std::nullopt;
    }
    return *f;
  }

 private:
  // Euclidean norm of the central-difference gradient of g_j on the grid.
  double Slope(int j, const Vector& x, double step) const {
    double sq = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      Vector a = x, b = x;
      a(i) += step;
      b(i) -= step;
      const auto ga = EvalG(problem_, j, a);
      const auto gb = EvalG(problem_, j, b);
      if (!ga || !gb) continue;
      const double d = (*ga - *gb) / (2.0 * step);
      sq += d * d;
    }
    return std::sqrt(sq);
  }

  const Problem& problem_;
  const IndexSet& J_;
  std::optional<double> fixed_band_;
};

struct Best {
  Vector x;
  NodeEval eval;
  long feasible = 0;
};

// Keeps the smaller value; ties go to the lexicographically smaller node.
bool Better(const NodeEval& a, const Vector& xa, const NodeEval& b, const Vector& xb) {
  if (!b.feasible) return a.feasible;
  if (!a.feasible) return false;
  if (a.f != b.f) return a.f < b.f;
  for (int i = 0; i < xa.size(); ++i) {
    if (xa(i) != xb(i)) return xa(i) < xb(i);
  }
  return false;
}

Best ScanBox(const GridEvaluator& eval, const Vector& lo, const Vector& hi, long steps,
             int threads) {
  const int n = static_cast<int>(lo.size());
  const Vector step = (hi - lo) / static_cast<double>(steps);
  const double h = step.maxCoeff();
  const long rows = n == 1 ? 1 : steps + 1;
  std::vector<Best> partial(rows);
  ParallelFor(static_cast<size_t>(rows), threads, [&](size_t r) {
    Best best;
    best.x = lo;
    Vector x(n);
    for (long i = 0; i <= steps; ++i) {
      x(0) = lo(0) + step(0) * i;
      if (n == 2) x(1) = lo(1) + step(1) * static_cast<double>(r);
      const NodeEval e = eval.Evaluate(x, h);
      if (!e.feasible) continue;
      ++best.feasible;
      if (Better(e, x, best.eval, best.x)) {
        best.eval = e;
        best.x = x;
      }
    }
    partial[r] = best;
  });
  Best out;
  out.x = lo;
  for (const Best& b : partial) {
    out.feasible += b.feasible;
    if (Better(b.eval, b.x, out.eval, out.x)) {
      out.eval = b.eval;
      out.x = b.x;
    }
  }
  return out;
}

// Shrinks a sign-change bracket of g to adjacent doubles; both ends are
// returned so callers can keep the one on the feasible side.
std::pair<double, double> Bisect(const std::function<double(double)>& g, double a, double b) {
  double ga = g(a);
  for (int it = 0; it < 200 && b - a > 0.0; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    const double gm = g(mid);
    if ((gm <= 0.0) == (ga <= 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return {a, b};
}

double GoldenMin(const std::function<double(double)>& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - r * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + r * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

OracleResult OracleMin(const Problem& problem, const IndexSet& J_in, const OracleGrid& grid,
                       std::optional<double> eq_band, int threads) {
  const int n = problem.n();
  if (n > 2) {
    throw CdtError(ErrorKind::kGuard, "oracle limited to n<=2 (got n=" + std::to_string(n) + ")");
  }
  if (!(grid.lo < grid.hi) || grid.steps < 0) {
    throw CdtError(ErrorKind::kInvalidParameter, "oracle grid needs lo < hi and steps >= 1");
  }
  const IndexSet J = NormalizeIndexSet(J_in, problem.m());
  const long steps = grid.steps > 0 ? grid.steps : (n == 1 ? 100000 : 1000);
  const int workers = ResolveThreadCount(threads);
  const GridEvaluator eval(problem, J, eq_band);

  OracleResult result;
  result.grid = grid;
  result.steps_used = steps;
  Vector lo = Vector::Constant(n, grid.lo);
  Vector hi = Vector::Constant(n, grid.hi);
  Best best = ScanBox(eval, lo, hi, steps, workers);
  if (!best.eval.feasible) {
    throw CdtError(ErrorKind::kInfeasibleOnGrid, "no feasible grid node in [" +
                                                     std::to_string(grid.lo) + "," +
                                                     std::to_string(grid.hi) + "]^n");
  }
  result.feasible_nodes = best.feasible;
  double h = (grid.hi - grid.lo) / static_cast<double>(steps);

  if (n == 2) {
    // Zoom: re-grid a few cells around the incumbent.
    constexpr long kZoomSteps = 200;
    constexpr int kZoomLevels = 4;
    for (int level = 0; level < kZoomLevels; ++level) {
      const Vector zlo = (best.x.array() - 4.0 * h).max(grid.lo).matrix();
      const Vector zhi = (best.x.array() + 4.0 * h).min(grid.hi).matrix();
      Best zoomed = ScanBox(eval, zlo, zhi, kZoomSteps, workers);
      if (!zoomed.eval.feasible) break;
      const bool exact_only = J.empty();
      if (!exact_only || Better(zoomed.eval, zoomed.x, best.eval, best.x)) best = zoomed;
      h = (zhi - zlo).maxCoeff() / kZoomSteps;
      ++result.zoom_levels;
    }
    result.argmin = best.x;
    result.minvalue = best.eval.f;
    result.eq_band = best.eval.band;
    return result;
  }

  // n = 1: exact candidates near the incumbent node.
  const double x0 = best.x(0);
  auto at = [](double t) { return Vector::Constant(1, t); };
  std::vector<double> candidates;
  if (J.empty()) candidates.push_back(x0);
  const double a = std::max(grid.lo, x0 - 3.0 * h);
  const double b = std::min(grid.hi, x0 + 3.0 * h);
  for (int j = 1; j <= problem.m(); ++j) {
    auto g = [&](double t) {
      const auto v = EvalG(problem, j, at(t));
      return v ? *v : std::numeric_limits<double>::quiet_NaN();
    };
    constexpr int kCells = 24;
    for (int c = 0; c < kCells; ++c) {
      const double u = a + (b - a) * c / kCells;
      const double v = a + (b - a) * (c + 1) / kCells;
      const double gu = g(u), gv = g(v);
      if (std::isnan(gu) || std::isnan(gv)) continue;
      if (gu == 0.0) candidates.push_back(u);
      if ((gu < 0.0) != (gv < 0.0)) {
        const auto [l, r] = Bisect(g, u, v);
        candidates.push_back(l);
        candidates.push_back(r);
      }
    }
  }
  if (J.empty()) {
    auto f = [&](double t) {
      const auto v = eval.ExactValue(at(t));
      return v ? *v : kInf;
    };
    candidates.push_back(GoldenMin(f, std::max(grid.lo, x0 - h), std::min(grid.hi, x0 + h)));
  }
  std::optional<double> best_value;
  double best_x = x0;
  for (double t : candidates) {
    const auto v = eval.ExactValue(at(t));
    if (v && (!best_value || *v < *best_value || (*v == *best_value && t < best_x))) {
      best_value = v;
      best_x = t;
    }
  }
  if (best_value) {
    result.argmin = at(best_x);
    result.minvalue = *best_value;
    result.polished = true;
  } else {
    result.argmin = best.x;
    result.minvalue = best.eval.f;
  }
  result.eq_band = J.empty() ? 0.0 : best.eval.band;
  return result;
}

}  // namespace cdt
