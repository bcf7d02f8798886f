#ifndef CDT_ORACLE_H_
#define CDT_ORACLE_H_

#include <optional>

#include "cdt/problem.h"

namespace cdt {

struct OracleGrid {
  double lo = -4.0;
  double hi = 4.0;
  // Nodes per axis minus one. 0 picks 100000 for n = 1 and 1000 for n = 2.
  long steps = 0;
};

struct OracleResult {
  Vector argmin;
  double minvalue = 0.0;
  OracleGrid grid;
  long steps_used = 0;
  // Largest equality band applied at the accepted node (0 without equalities).
  double eq_band = 0.0;
  long feasible_nodes = 0;
  int zoom_levels = 0;
  bool polished = false;
};

// Dense grid minimization of f over X_J for n <= 2, independent of every
// duality computation. Equalities count as satisfied when |g_j| <= eq_band;
// by default the band is 2 * |local slope| * step. Throws CdtError(kGuard) for
// n > 2 and CdtError(kInfeasibleOnGrid) when no node is feasible.
OracleResult OracleMin(const Problem& problem, const IndexSet& J, const OracleGrid& grid = {},
                       std::optional<double> eq_band = std::nullopt, int threads = 0);

}  // namespace cdt

#endif  // CDT_ORACLE_H_
