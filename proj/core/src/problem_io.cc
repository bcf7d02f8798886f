#include "cdt/problem_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cdt/errors.h"
#include "json.hpp"

namespace cdt {

using nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& origin, const std::string& where,
                       const std::string& what) {
  throw CdtError(ErrorKind::kParse, origin + ": " + where + ": " + what);
}

double ReadNumber(const json& v, const std::string& origin, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  Fail(origin, where, "expected a number");
}

Vector ReadVector(const json& obj, const char* key, int n, const std::string& origin,
                  const std::string& where) {
  if (!obj.contains(key) || obj[key].is_null()) return Vector::Zero(n);
  const json& v = obj[key];
  const std::string at = where + "." + key;
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    Fail(origin, at, "expected a list of " + std::to_string(n) + " numbers");
  }
  Vector out(n);
  for (int i = 0; i < n; ++i) out(i) = ReadNumber(v[i], origin, at + "[" + std::to_string(i) + "]");
  return out;
}

Matrix ReadMatrix(const json& obj, const char* key, int n, const std::string& origin,
                  const std::string& where) {
  if (!obj.contains(key) || obj[key].is_null()) return Matrix::Zero(n, n);
  const json& v = obj[key];
  const std::string at = where + "." + key;
  if (!v.is_array() || static_cast<int>(v.size()) != n * n) {
    Fail(origin, at, "expected a row-major list of " + std::to_string(n * n) + " numbers");
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = ReadNumber(v[i * n + j], origin, at + "[" + std::to_string(i * n + j) + "]");
    }
  }
  return out;
}

double ReadScalar(const json& obj, const char* key, double fallback, const std::string& origin,
                  const std::string& where) {
  if (!obj.contains(key) || obj[key].is_null()) return fallback;
  return ReadNumber(obj[key], origin, where + "." + key);
}

LegendreFunction ReadLegendre(const json& node, const std::string& origin,
                              const std::string& where) {
  if (!node.is_object()) Fail(origin, where, "expected an object");
  const std::string kind = node.value("kind", "quadratic");
  if (kind == "quadratic") {
    const double a = ReadScalar(node, "a", 1.0, origin, where);
    const double shift = ReadScalar(node, "shift", 0.0, origin, where);
    try {
      return QuadraticLegendre(a, shift);
    } catch (const CdtError& e) {
      Fail(origin, where, e.what());
    }
  }
  if (kind == "plugin") {
    if (!node.contains("name") || !node["name"].is_string()) {
      Fail(origin, where, "plugin Legendre function needs a \"name\"");
    }
    const auto name = node["name"].get<std::string>();
    auto v = LegendreRegistry::Global().Find(name);
    if (!v) Fail(origin, where, "unknown plugin Legendre function '" + name + "'");
    return *v;
  }
  Fail(origin, where + ".kind", "expected \"quadratic\" or \"plugin\", got '" + kind + "'");
}

Interval ReadInterval(const json& v, const std::string& origin, const std::string& where) {
  if (!v.is_array() || v.size() != 2) Fail(origin, where, "expected [lo, hi]");
  const double lo = ReadNumber(v[0], origin, where + "[0]");
  const double hi = ReadNumber(v[1], origin, where + "[1]");
  if (!(lo < hi)) Fail(origin, where, "needs lo < hi");
  return {lo, hi, std::isfinite(lo), std::isfinite(hi)};
}

json NumberOrInf(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

json MatrixJson(const Matrix& A) {
  json out = json::array();
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) out.push_back(A(i, j));
  return out;
}

json VectorJson(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

Problem ParseProblem(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CdtError(ErrorKind::kParse,
                   origin + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) Fail(origin, "top level", "expected an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) Fail(origin, "n", "expected an integer");
  const int n = doc["n"].get<int>();
  if (n < 1) Fail(origin, "n", "must be >= 1");
  if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty()) {
    Fail(origin, "terms", "expected a non-empty list");
  }
  const json& terms_json = doc["terms"];
  const int m = static_cast<int>(terms_json.size()) - 1;
  if (doc.contains("m")) {
    if (!doc["m"].is_number_integer() || doc["m"].get<int>() != m) {
      Fail(origin, "m", "does not match the number of terms minus one (" + std::to_string(m) + ")");
    }
  }
  IndexSet J;
  if (doc.contains("J")) {
    if (!doc["J"].is_array()) Fail(origin, "J", "expected a list of indices");
    for (const json& j : doc["J"]) {
      if (!j.is_number_integer()) Fail(origin, "J", "expected integers");
      const int idx = j.get<int>();
      if (idx < 1 || idx > m) Fail(origin, "J", "index " + std::to_string(idx) + " not in 1..m");
      J.push_back(idx);
    }
  }

  std::vector<ConstraintTerm> terms;
  for (int k = 0; k <= m; ++k) {
    const json& t = terms_json[k];
    const std::string where = "terms[" + std::to_string(k) + "]";
    if (!t.is_object()) Fail(origin, where, "expected an object");
    ConstraintTerm term;
    term.q = {ReadMatrix(t, "A", n, origin, where), ReadVector(t, "b", n, origin, where),
              ReadScalar(t, "c", 0.0, origin, where)};
    term.lambda_map = {ReadMatrix(t, "C", n, origin, where), ReadVector(t, "d", n, origin, where),
                       ReadScalar(t, "e", 0.0, origin, where)};
    if (t.contains("quadratic")) {
      if (!t["quadratic"].is_boolean()) Fail(origin, where + ".quadratic", "expected true/false");
      term.is_quadratic = t["quadratic"].get<bool>();
    }
    if (t.contains("V") && !term.is_quadratic) {
      term.V = ReadLegendre(t["V"], origin, where + ".V");
      const auto report = ValidateLegendre(term.V, 200, 0x5eedULL + k);
      if (!report.passed || !report.convexity_ok) {
        std::ostringstream why;
        why << "Legendre function '" << term.V.label()
            << "' failed validation (Fenchel-Young " << report.max_fenchel_young_relative
            << ", inverse " << report.max_inverse_residual << ")";
        Fail(origin, where + ".V", why.str());
      }
    }
    if (t.contains("declared_conj_dom")) {
      term.declared_conj_dom = ReadInterval(t["declared_conj_dom"], origin, where + ".declared_conj_dom");
    }
    terms.push_back(std::move(term));
  }
  try {
    return Problem(n, std::move(terms), std::move(J), doc.value("name", ""));
  } catch (const CdtError& e) {
    Fail(origin, "problem", e.what());
  }
}

Problem LoadProblemFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CdtError(ErrorKind::kParse, path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseProblem(buffer.str(), path);
}

std::string SerializeProblem(const Problem& problem) {
  json doc;
  if (!problem.name().empty()) doc["name"] = problem.name();
  doc["n"] = problem.n();
  doc["m"] = problem.m();
  doc["J"] = problem.J();
  json terms = json::array();
  for (const ConstraintTerm& t : problem.terms()) {
    json term;
    term["A"] = MatrixJson(t.q.A);
    term["b"] = VectorJson(t.q.b);
    term["c"] = t.q.c;
    term["quadratic"] = t.is_quadratic;
    if (!t.is_quadratic) {
      term["C"] = MatrixJson(t.lambda_map.A);
      term["d"] = VectorJson(t.lambda_map.b);
      term["e"] = t.lambda_map.c;
      if (t.V.plugin_name()) {
        term["V"] = {{"kind", "plugin"}, {"name", *t.V.plugin_name()}};
      } else if (t.V.quadratic_params()) {
        term["V"] = {{"kind", "quadratic"},
                     {"a", t.V.quadratic_params()->a},
                     {"shift", t.V.quadratic_params()->shift}};
      } else {
        throw CdtError(ErrorKind::kInvalidFunction,
                       "Legendre function '" + t.V.label() + "' is not serializable");
      }
    }
    if (t.declared_conj_dom) {
      term["declared_conj_dom"] = {NumberOrInf(t.declared_conj_dom->lo),
                                   NumberOrInf(t.declared_conj_dom->hi)};
    }
    terms.push_back(term);
  }
  doc["terms"] = terms;
  return doc.dump(2) + "\n";
}

}  // namespace cdt
