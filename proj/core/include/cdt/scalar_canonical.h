#ifndef CDT_SCALAR_CANONICAL_H_
#define CDT_SCALAR_CANONICAL_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cdt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A (possibly unbounded) interval of the real line. Infinite endpoints are
// always open.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval Real() { return {}; }
  static Interval Closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval Open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval AtLeast(double lo) { return {lo, kInf, true, false}; }
  static Interval GreaterThan(double lo) { return {lo, kInf, false, false}; }
  static Interval AtMost(double hi) { return {-kInf, hi, false, true}; }
  static Interval LessThan(double hi) { return {-kInf, hi, false, false}; }

  bool Contains(double t) const;
  // Strict membership in the interior (lo, hi).
  bool InInterior(double t) const { return t > lo && t < hi; }
  bool HasInterior() const { return lo < hi; }
  bool IsReal() const { return lo == -kInf && hi == kInf; }
  std::string ToString() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct QuadraticLegendreParams {
  double a = 1.0;
  double shift = 0.0;
};

// A scalar Legendre-type function V together with its Fenchel conjugate V*.
// Conjugates are supplied by the constructor of the pair, never computed.
// Value() and ConjValue() return +inf outside their domains.
class LegendreFunction {
 public:
  using ScalarMap = std::function<double(double)>;

  // The half-square V(t) = t^2/2, which is self-conjugate.
  LegendreFunction();

  LegendreFunction(std::string label, Interval dom, Interval conj_dom, ScalarMap value,
                   ScalarMap deriv, ScalarMap conj_value, ScalarMap conj_deriv,
                   ScalarMap conj_deriv2 = {});

  const std::string& label() const { return label_; }
  const Interval& dom() const { return dom_; }
  const Interval& conj_dom() const { return conj_dom_; }

  double Value(double t) const;
  double Deriv(double t) const { return deriv_(t); }
  double ConjValue(double s) const;
  double ConjDeriv(double s) const { return conj_deriv_(s); }
  // Second derivative of V*; a central difference of ConjDeriv when the pair
  // does not provide it.
  double ConjCurvature(double s) const;

  const std::optional<QuadraticLegendreParams>& quadratic_params() const { return quadratic_; }
  const std::optional<std::string>& plugin_name() const { return plugin_name_; }

 private:
  friend LegendreFunction QuadraticLegendre(double a, double shift);
  friend class LegendreRegistry;

  std::string label_;
  Interval dom_;
  Interval conj_dom_;
  ScalarMap value_;
  ScalarMap deriv_;
  ScalarMap conj_value_;
  ScalarMap conj_deriv_;
  ScalarMap conj_deriv2_;
  std::optional<QuadraticLegendreParams> quadratic_;
  std::optional<std::string> plugin_name_;
};

// V(t) = a t^2 / 2 + shift on the whole line, V*(s) = s^2 / (2a) - shift.
// Throws CdtError(kInvalidParameter) unless a > 0.
LegendreFunction QuadraticLegendre(double a, double shift = 0.0);

struct LegendreValidationReport {
  int samples = 0;
  // max |V(t) + V*(V'(t)) - t V'(t)| over the samples, and the same scaled
  // by 1 + |t V'(t)|.
  double max_fenchel_young_violation = 0.0;
  double max_fenchel_young_relative = 0.0;
  // max |(V*)'(V'(t)) - t| / (1 + |t|).
  double max_inverse_residual = 0.0;
  // min over sampled (t, s) of V(t) + V*(s) - t s, scaled by 1 + |t s|.
  double min_fenchel_young_slack = kInf;
  bool convexity_ok = true;
  bool passed = false;
};

inline constexpr double kLegendreValidationTolerance = 1e-9;

// Checks the Legendre conditions on a seeded, jittered grid inside int(dom V).
// Throws CdtError(kInvalidParameter) for samples < 1 and
// CdtError(kInvalidFunction) when dom V has empty interior.
LegendreValidationReport ValidateLegendre(const LegendreFunction& v, int samples,
                                          uint64_t seed);

// Named plug-in Legendre pairs for problem files ({kind: "plugin", name}).
// Ships with "exp", "entropy" and "neglog".
class LegendreRegistry {
 public:
  using Factory = std::function<LegendreFunction()>;

  static LegendreRegistry& Global();

  void Register(const std::string& name, Factory factory);
  std::optional<LegendreFunction> Find(std::string_view name) const;
  std::vector<std::string> Names() const;

 private:
  LegendreRegistry();

  mutable std::mutex mutex_;
  std::map<std::string, Factory, std::less<>> factories_;
};

}  // namespace cdt

#endif  // CDT_SCALAR_CANONICAL_H_
