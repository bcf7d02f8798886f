#include "cdt/probes.h"

#include <cmath>

#include "cdt/errors.h"

namespace cdt {

std::string_view DivergenceVerdictName(DivergenceVerdict verdict) {
  switch (verdict) {
    case DivergenceVerdict::kDiverges: return "DIVERGES";
    case DivergenceVerdict::kBoundedOnSamples: return "BOUNDED_ON_SAMPLES";
    case DivergenceVerdict::kLeftDomain: return "LEFT_DOMAIN";
  }
  return "?";
}

std::string_view CurveVerdictName(CurveVerdict verdict) {
  switch (verdict) {
    case CurveVerdict::kNotLocalExtremum: return "NOT_LOCAL_EXTREMUM";
    case CurveVerdict::kMaxAlongCurve: return "MAX_ALONG_CURVE";
    case CurveVerdict::kMinAlongCurve: return "MIN_ALONG_CURVE";
    case CurveVerdict::kExtremumUndecided: return "EXTREMUM_UNDECIDED";
  }
  return "?";
}

DivergenceReport ProbeUnboundedness(const MsgaoParams& params, const DualPoint& base,
                                    double sigma_tilde, const std::vector<double>& mu_schedule) {
  const Problem problem = MakeMsgao(params);
  if (base.lambda().size() != 2 || base.sigma().size() != 3) {
    throw CdtError(ErrorKind::kInvalidParameter, "base point does not fit the two-block instance");
  }
  DivergenceReport report;
  report.base_lambda = base.lambda();
  report.base_sigma = base.sigma();
  report.base_d = DualValue(problem, base);
  report.sigma_tilde = sigma_tilde;
  report.nu = sigma_tilde * sigma_tilde * sigma_tilde + 2.0 * sigma_tilde * sigma_tilde +
              params.gamma * params.gamma;

  const ConstraintTerm& well = problem.term(2);
  bool left = false;
  std::vector<double> values;
  for (double mu : mu_schedule) {
    DivergenceSample s;
    s.mu = mu;
    Vector lambda = base.lambda();
    lambda(1) = mu;
    Vector sigma = base.sigma();
    sigma(2) = sigma_tilde;
    s.in_conj_dom = well.V.conj_dom().Contains(sigma_tilde);
    s.in_declared_dom = well.declared_conj_dom ? well.declared_conj_dom->Contains(sigma_tilde)
                                               : s.in_conj_dom;
    const DualPoint dp = DualPoint::Make(problem, lambda, sigma);
    s.membership = Membership(problem, dp, problem.J());
    if (!s.in_conj_dom) {
      left = true;
      s.skipped = true;
    } else if (dp.singular() || !dp.f_in_range()) {
      s.skipped = true;
    } else {
      s.d = DualValue(problem, dp);
      values.push_back(s.d);
    }
    report.samples.push_back(s);
  }
  if (left) {
    report.verdict = DivergenceVerdict::kLeftDomain;
  } else if (static_cast<int>(values.size()) >= kDivergenceMonotoneSamples &&
             values.back() >= kDivergenceThreshold) {
    bool increasing = true;
    for (size_t i = values.size() - kDivergenceMonotoneSamples + 1; i < values.size(); ++i) {
      increasing = increasing && values[i] > values[i - 1];
    }
    report.verdict = increasing ? DivergenceVerdict::kDiverges : DivergenceVerdict::kBoundedOnSamples;
  }
  return report;
}

CurveReport ProbeCurveExtremum(const Problem& problem, const DualPoint& dp0,
                               const DualCurve& curve, double t_range, int samples) {
  if (!(t_range > 0.0) || samples < 1) {
    throw CdtError(ErrorKind::kInvalidParameter, "curve probe needs t_range > 0 and samples >= 1");
  }
  const auto [l0, s0] = curve(0.0);
  if (l0.size() != dp0.lambda().size() || s0.size() != dp0.sigma().size() ||
      (l0 - dp0.lambda()).cwiseAbs().maxCoeff() > 1e-12 ||
      (s0 - dp0.sigma()).cwiseAbs().maxCoeff() > 1e-12) {
    throw CdtError(ErrorKind::kInvalidParameter, "curve(0) does not pass through dp0");
  }
  CurveReport report;
  report.d0 = DualValue(problem, dp0);
  constexpr double kGap = 1e-12;
  bool all_scales_both = true;
  bool any_above = false;
  bool any_below = false;
  for (double radius : {t_range, 0.5 * t_range, 0.25 * t_range}) {
    CurveScale scale;
    scale.radius = radius;
    for (int i = 1; i <= samples; ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double t = sign * radius * i / samples;
        const auto [lambda, sigma] = curve(t);
        const DualPoint dp = DualPoint::Make(problem, lambda, sigma);
        bool in_dom = true;
        for (int k = 0; k < sigma.size(); ++k) {
          in_dom = in_dom && problem.term(k).V.conj_dom().Contains(sigma(k));
        }
        if (!in_dom || dp.singular()) {
          ++scale.excluded;
          continue;
        }
        const double d = DualValue(problem, dp);
        report.max_value = std::max(report.max_value, d);
        report.min_value = std::min(report.min_value, d);
        if (d > report.d0 + kGap) ++scale.above;
        if (d < report.d0 - kGap) ++scale.below;
      }
    }
    report.values_above += scale.above;
    report.values_below += scale.below;
    report.excluded += scale.excluded;
    all_scales_both = all_scales_both && scale.above > 0 && scale.below > 0;
    any_above = any_above || scale.above > 0;
    any_below = any_below || scale.below > 0;
    report.scales.push_back(scale);
  }
  if (all_scales_both) {
    report.verdict = CurveVerdict::kNotLocalExtremum;
  } else if (any_below && !any_above) {
    report.verdict = CurveVerdict::kMaxAlongCurve;
  } else if (any_above && !any_below) {
    report.verdict = CurveVerdict::kMinAlongCurve;
  } else {
    report.verdict = CurveVerdict::kExtremumUndecided;
  }
  return report;
}

}  // namespace cdt
