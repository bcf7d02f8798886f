#include "cdt/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cdt {

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string FormatVector(const Vector& v) {
  std::string out = "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += FormatNumber(v(i));
  }
  return out + ")";
}

Record& Record::Add(std::string key, std::string value) {
  fields.emplace_back(std::move(key), std::move(value));
  return *this;
}

Record& Record::Add(std::string key, double value) { return Add(std::move(key), FormatNumber(value)); }

Record& Record::Add(std::string key, bool value) {
  return Add(std::move(key), std::string(value ? "true" : "false"));
}

Record& Record::Add(std::string key, const Vector& value) {
  return Add(std::move(key), FormatVector(value));
}

namespace {

std::string Join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string Quote(const std::string& value) {
  if (value.find_first_of(" \t\"=") == std::string::npos && !value.empty()) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Record PointRecord(int index, const CriticalPoint& cp,
                   const Certificate& cert, const PerfectDualityReport& duality) {
  Record r{"point", {}};
  r.Add("index", std::to_string(index));
  r.Add("branch", cp.branch);
  r.Add("x", cp.point.x);
  r.Add("lambda", cp.point.lambda);
  r.Add("sigma", cp.point.sigma);
  r.Add("f", cp.f_value ? FormatNumber(*cp.f_value) : std::string("undefined"));
  r.Add("residual_x", cp.residual_x);
  r.Add("residual_sigma", cp.residual_sigma);
  r.Add("complementarity", cp.complementarity);
  r.Add("critical", cp.is_critical);
  r.Add("kkt", cp.is_KKT);
  r.Add("j_lkkt", cp.is_J_LKKT);
  r.Add("l_critical", cp.l_is_critical);
  r.Add("l_j_lkkt", cp.l_is_J_LKKT);
  r.Add("d_j_lkkt", cp.d_is_J_LKKT);
  r.Add("x_domain", std::string(XMembershipName(cp.x_membership)));
  r.Add("feasible", cp.feasibility.feasible);
  r.Add("in_X_e", cp.feasibility.in_X_e);
  r.Add("in_X_i", cp.feasibility.in_X_i);
  if (!cp.feasibility.reason.empty()) r.Add("infeasible_because", cp.feasibility.reason);
  const MembershipVerdict& m = cp.membership;
  r.Add("G_min_eigenvalue", m.min_eigenvalue);
  r.Add("in_T", m.in_T);
  r.Add("in_T_col", m.in_T_col);
  r.Add("in_T_QJ_plus", m.in_T_QJ_plus);
  r.Add("in_T_QJ_col_plus", m.in_T_QJ_col_plus);
  r.Add("in_T_plus", m.in_T_plus);
  r.Add("in_Gamma_J", m.in_Gamma_J);
  r.Add("G_psd", m.G_psd);
  r.Add("G_pd", m.G_pd);
  r.Add("S_a_plus_latorre_gao", m.latorre_gao_Sa_plus);
  r.Add("S_a_plus_ruan_gao", m.ruan_gao_Sa_plus);
  r.Add("S_a_plus_morales_gao", m.morales_gao_Sa_plus);
  r.Add("S_c_plus_morales_gao", m.morales_gao_Sc_plus);
  if (duality.applicable) {
    r.Add("perfect_duality", duality.passed);
    r.Add("xi", duality.xi);
    r.Add("d", duality.d);
    r.Add("duality_gap", duality.max_gap);
  } else {
    r.Add("perfect_duality", "not_applicable: " + duality.reason);
  }
  r.Add("verdict", std::string(VerdictName(cert.verdict)));
  if (cert.verdict != Verdict::kNoCertificate) {
    r.Add("solves", "P_J with J=" + FormatIndexSet(cert.solved_J));
    r.Add("x_in", "X_J with J=" + FormatIndexSet(cert.feasible_for));
  }
  if (!cert.failed_hypotheses.empty()) r.Add("failed", Join(cert.failed_hypotheses, "; "));
  if (!cert.wrongly_accepted_by.empty()) {
    r.Add("would_be_wrongly_accepted_by", Join(cert.wrongly_accepted_by, "; "));
  }
  return r;
}

Record OracleRecord(const OracleResult& result) {
  Record r{"oracle", {}};
  r.Add("argmin", result.argmin);
  r.Add("min", result.minvalue);
  r.Add("grid_lo", result.grid.lo);
  r.Add("grid_hi", result.grid.hi);
  r.Add("steps", std::to_string(result.steps_used));
  r.Add("zoom_levels", std::to_string(result.zoom_levels));
  r.Add("eq_band", result.eq_band);
  r.Add("feasible_nodes", std::to_string(result.feasible_nodes));
  r.Add("polished", result.polished);
  return r;
}

void WriteRecord(std::ostream& out, const Record& record, OutputFormat format) {
  if (format == OutputFormat::kStructured) {
    out << "record=" << record.kind;
    for (const auto& [key, value] : record.fields) out << ' ' << key << '=' << Quote(value);
    out << '\n';
    return;
  }
  out << record.kind << '\n';
  size_t width = 0;
  for (const auto& [key, value] : record.fields) width = std::max(width, key.size());
  for (const auto& [key, value] : record.fields) {
    out << "  " << key << std::string(width - key.size(), ' ') << "  " << value << '\n';
  }
}

}  // namespace cdt
