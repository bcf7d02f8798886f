#include "cdt/scalar_canonical.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "cdt/errors.h"
#include "cdt/random.h"

namespace cdt {

bool Interval::Contains(double t) const {
  if (std::isnan(t)) return false;
  const bool above = lo_closed ? t >= lo : t > lo;
  const bool below = hi_closed ? t <= hi : t < hi;
  return above && below;
}

std::string Interval::ToString() const {
  std::ostringstream out;
  out.precision(17);
  out << (lo_closed ? '[' : '(');
  if (lo == -kInf) out << "-inf"; else out << lo;
  out << ',';
  if (hi == kInf) out << "inf"; else out << hi;
  out << (hi_closed ? ']' : ')');
  return out.str();
}

LegendreFunction::LegendreFunction() : LegendreFunction(QuadraticLegendre(1.0, 0.0)) {}

LegendreFunction::LegendreFunction(std::string label, Interval dom, Interval conj_dom,
                                   ScalarMap value, ScalarMap deriv, ScalarMap conj_value,
                                   ScalarMap conj_deriv, ScalarMap conj_deriv2)
    : label_(std::move(label)),
      dom_(dom),
      conj_dom_(conj_dom),
      value_(std::move(value)),
      deriv_(std::move(deriv)),
      conj_value_(std::move(conj_value)),
      conj_deriv_(std::move(conj_deriv)),
      conj_deriv2_(std::move(conj_deriv2)) {
  if (!value_ || !deriv_ || !conj_value_ || !conj_deriv_) {
    throw CdtError(ErrorKind::kInvalidFunction,
                   "Legendre pair '" + label_ + "' is missing a value or derivative map");
  }
  if (!dom_.HasInterior() || !conj_dom_.HasInterior()) {
    throw CdtError(ErrorKind::kInvalidFunction,
                   "Legendre pair '" + label_ + "' has a domain with empty interior");
  }
}

double LegendreFunction::Value(double t) const {
  return dom_.Contains(t) ? value_(t) : kInf;
}

double LegendreFunction::ConjValue(double s) const {
  return conj_dom_.Contains(s) ? conj_value_(s) : kInf;
}

double LegendreFunction::ConjCurvature(double s) const {
  if (conj_deriv2_) return conj_deriv2_(s);
  double h = 1e-6 * (1.0 + std::abs(s));
  // Stay inside int(dom V*).
  while (h > 1e-14 && !(conj_dom_.InInterior(s - h) && conj_dom_.InInterior(s + h))) h *= 0.5;
  return (conj_deriv_(s + h) - conj_deriv_(s - h)) / (2.0 * h);
}

LegendreFunction QuadraticLegendre(double a, double shift) {
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(shift)) {
    throw CdtError(ErrorKind::kInvalidParameter,
                   "quadratic Legendre function needs a > 0 (got a=" + std::to_string(a) + ")");
  }
  std::ostringstream label;
  label.precision(17);
  label << "quadratic(a=" << a << ",shift=" << shift << ")";
  LegendreFunction v(
      label.str(), Interval::Real(), Interval::Real(),
      [a, shift](double t) { return 0.5 * a * t * t + shift; },
      [a](double t) { return a * t; },
      [a, shift](double s) { return s * s / (2.0 * a) - shift; },
      [a](double s) { return s / a; },
      [a](double) { return 1.0 / a; });
  v.quadratic_ = QuadraticLegendreParams{a, shift};
  return v;
}

namespace {

constexpr double kBoundaryOffset = 1e-6;
constexpr double kUnboundedHalfWidth = 10.0;

// Finite window of int(I) used for sampling; endpoints kept kBoundaryOffset
// inside closed or open finite ends.
std::pair<double, double> SamplingWindow(const Interval& dom) {
  double lo = dom.lo;
  double hi = dom.hi;
  if (lo == -kInf && hi == kInf) {
    lo = -kUnboundedHalfWidth;
    hi = kUnboundedHalfWidth;
  } else if (lo == -kInf) {
    lo = hi - 2.0 * kUnboundedHalfWidth;
  } else if (hi == kInf) {
    hi = lo + 2.0 * kUnboundedHalfWidth;
  }
  if (std::isfinite(dom.lo)) lo = dom.lo + kBoundaryOffset;
  if (std::isfinite(dom.hi)) hi = dom.hi - kBoundaryOffset;
  return {lo, hi};
}

}  // namespace

LegendreValidationReport ValidateLegendre(const LegendreFunction& v, int samples,
                                          uint64_t seed) {
  if (samples < 1) {
    throw CdtError(ErrorKind::kInvalidParameter, "validate_legendre needs samples >= 1");
  }
  if (!v.dom().HasInterior() || !v.conj_dom().HasInterior()) {
    throw CdtError(ErrorKind::kInvalidFunction,
                   "cannot sample the interior of the domain of '" + v.label() + "'");
  }
  const auto [lo, hi] = SamplingWindow(v.dom());
  const auto [slo, shi] = SamplingWindow(v.conj_dom());
  if (!(lo < hi) || !(slo < shi)) {
    throw CdtError(ErrorKind::kInvalidFunction,
                   "domain of '" + v.label() + "' is too narrow to sample");
  }

  Rng rng(seed);
  LegendreValidationReport report;
  report.samples = samples;
  const double spacing = samples > 1 ? (hi - lo) / (samples - 1) : 0.0;
  std::vector<double> points;
  points.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    double t = samples > 1 ? lo + spacing * i : 0.5 * (lo + hi);
    t += spacing * (rng.Uniform01() - 0.5) * 0.5;
    points.push_back(std::clamp(t, lo, hi));
  }

  for (double t : points) {
    const double s = v.Deriv(t);
    const double gap = v.Value(t) + v.ConjValue(s) - t * s;
    const double abs_gap = std::isfinite(gap) ? std::abs(gap) : kInf;
    report.max_fenchel_young_violation = std::max(report.max_fenchel_young_violation, abs_gap);
    report.max_fenchel_young_relative =
        std::max(report.max_fenchel_young_relative, abs_gap / (1.0 + std::abs(t * s)));
    const double back = v.conj_dom().InInterior(s) ? v.ConjDeriv(s) : kInf;
    const double inverse = std::abs(back - t) / (1.0 + std::abs(t));
    report.max_inverse_residual =
        std::max(report.max_inverse_residual, std::isfinite(inverse) ? inverse : kInf);

    // Young's inequality against an unrelated dual point.
    const double s_other = rng.Uniform(slo, shi);
    const double slack = v.Value(t) + v.ConjValue(s_other) - t * s_other;
    report.min_fenchel_young_slack =
        std::min(report.min_fenchel_young_slack, slack / (1.0 + std::abs(t * s_other)));
  }

  // Strict midpoint convexity on random pairs.
  for (int i = 0; i < samples; ++i) {
    const double a = rng.Uniform(lo, hi);
    const double b = rng.Uniform(lo, hi);
    if (std::abs(a - b) < 1e-3 * (hi - lo)) continue;
    const double mid = v.Value(0.5 * (a + b));
    const double chord = 0.5 * (v.Value(a) + v.Value(b));
    const double scale = 1.0 + std::abs(mid) + std::abs(chord);
    if (!(mid < chord + 1e-12 * scale)) report.convexity_ok = false;
  }

  report.passed = report.max_fenchel_young_relative <= kLegendreValidationTolerance &&
                  report.max_inverse_residual <= kLegendreValidationTolerance &&
                  report.min_fenchel_young_slack >= -1e-12;
  return report;
}

LegendreRegistry& LegendreRegistry::Global() {
  static LegendreRegistry registry;
  return registry;
}

LegendreRegistry::LegendreRegistry() {
  factories_["exp"] = [] {
    return LegendreFunction(
        "exp", Interval::Real(), Interval::AtLeast(0.0),
        [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); },
        [](double s) { return s == 0.0 ? 0.0 : s * std::log(s) - s; },
        [](double s) { return std::log(s); }, [](double s) { return 1.0 / s; });
  };
  factories_["entropy"] = [] {
    return LegendreFunction(
        "entropy", Interval::AtLeast(0.0), Interval::Real(),
        [](double t) { return t == 0.0 ? 0.0 : t * std::log(t) - t; },
        [](double t) { return std::log(t); }, [](double s) { return std::exp(s); },
        [](double s) { return std::exp(s); }, [](double s) { return std::exp(s); });
  };
  factories_["neglog"] = [] {
    return LegendreFunction(
        "neglog", Interval::GreaterThan(0.0), Interval::LessThan(0.0),
        [](double t) { return -std::log(t); }, [](double t) { return -1.0 / t; },
        [](double s) { return -1.0 - std::log(-s); }, [](double s) { return -1.0 / s; },
        [](double s) { return 1.0 / (s * s); });
  };
}

void LegendreRegistry::Register(const std::string& name, Factory factory) {
  std::lock_guard<std::mutex> lock(mutex_);
  factories_[name] = std::move(factory);
}

std::optional<LegendreFunction> LegendreRegistry::Find(std::string_view name) const {
  Factory factory;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = factories_.find(name);
    if (it == factories_.end()) return std::nullopt;
    factory = it->second;
  }
  LegendreFunction v = factory();
  v.plugin_name_ = std::string(name);
  return v;
}

std::vector<std::string> LegendreRegistry::Names() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<std::string> names;
  for (const auto& [name, unused] : factories_) names.push_back(name);
  return names;
}

}  // namespace cdt
