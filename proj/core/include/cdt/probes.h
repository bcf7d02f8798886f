#ifndef CDT_PROBES_H_
#define CDT_PROBES_H_

#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "cdt/builtins.h"
#include "cdt/dual.h"

namespace cdt {

enum class DivergenceVerdict { kDiverges, kBoundedOnSamples, kLeftDomain };
std::string_view DivergenceVerdictName(DivergenceVerdict verdict);

struct DivergenceSample {
  double mu = 0.0;
  bool skipped = false;  // G singular or F outside Im G
  double d = 0.0;
  bool in_conj_dom = false;      // sigma in dom V* of the problem itself
  bool in_declared_dom = false;  // sigma in the historical [-alpha eta, inf)
  MembershipVerdict membership;
};

struct DivergenceReport {
  Vector base_lambda;
  Vector base_sigma;
  double base_d = 0.0;
  double sigma_tilde = 0.0;
  double nu = 0.0;  // sigma~^3 + 2 sigma~^2 + gamma^2
  std::vector<DivergenceSample> samples;
  DivergenceVerdict verdict = DivergenceVerdict::kBoundedOnSamples;
};

inline constexpr double kDivergenceThreshold = 1e6;
inline constexpr int kDivergenceMonotoneSamples = 5;

// D along (lambda_bar, mu, sigma~) on the two-block instance: lambda_1 stays at
// the base value, lambda_2 = mu runs through the schedule, sigma_2 = sigma~.
DivergenceReport ProbeUnboundedness(const MsgaoParams& params, const DualPoint& base,
                                    double sigma_tilde, const std::vector<double>& mu_schedule);

enum class CurveVerdict {
  kNotLocalExtremum,
  kMaxAlongCurve,
  kMinAlongCurve,
  kExtremumUndecided,
};
std::string_view CurveVerdictName(CurveVerdict verdict);

using DualCurve = std::function<std::pair<Vector, Vector>(double)>;

struct CurveScale {
  double radius = 0.0;
  int above = 0;
  int below = 0;
  int excluded = 0;
};

struct CurveReport {
  double d0 = 0.0;
  int values_above = 0;
  int values_below = 0;
  int excluded = 0;
  double max_value = -kInf;
  double min_value = kInf;
  std::vector<CurveScale> scales;
  CurveVerdict verdict = CurveVerdict::kExtremumUndecided;
};

// Samples D on curve(t), 0 < |t| <= r, for r = t_range, t_range/2, t_range/4.
// Requires curve(0) = dp0 within 1e-12 (CdtError(kInvalidParameter)).
CurveReport ProbeCurveExtremum(const Problem& problem, const DualPoint& dp0,
                               const DualCurve& curve, double t_range, int samples);

}  // namespace cdt

#endif  // CDT_PROBES_H_
