#include "cdt/builtins.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "cdt/errors.h"

namespace cdt {

Problem MakeExample1() {
  ConstraintTerm objective;
  objective.q = QuadraticFunction::Zero(1);
  objective.q.A(0, 0) = 1.0;
  objective.q.b(0) = 6.0;
  objective.lambda_map = QuadraticFunction::Zero(1);
  objective.is_quadratic = true;

  ConstraintTerm well;
  well.q = QuadraticFunction::Zero(1);
  well.lambda_map = QuadraticFunction::Zero(1);
  well.lambda_map.A(0, 0) = 1.0;
  well.lambda_map.c = -4.0;
  well.V = QuadraticLegendre(1.0, -2.0);

  return Problem(1, {objective, well}, {}, "example1");
}

Problem MakeMsgao(const MsgaoParams& p) {
  if (!(p.alpha > 0.0)) throw CdtError(ErrorKind::kInvalidParameter, "msgao needs alpha > 0");
  for (double v : {p.gamma, p.alpha, p.eta, p.r, p.c, p.a}) {
    if (!std::isfinite(v)) throw CdtError(ErrorKind::kInvalidParameter, "msgao parameters must be finite");
  }
  ConstraintTerm f;
  f.q = QuadraticFunction::Zero(2);
  f.q.A << 1.0, -1.0, -1.0, 1.0;
  f.lambda_map = QuadraticFunction::Zero(2);
  f.is_quadratic = true;

  ConstraintTerm ball;
  ball.q = QuadraticFunction::Zero(2);
  ball.q.A(0, 0) = p.a;
  ball.q.c = -0.5 * p.r * p.r;
  ball.lambda_map = QuadraticFunction::Zero(2);
  ball.is_quadratic = true;

  ConstraintTerm well;
  well.q = QuadraticFunction::Zero(2);
  well.q.b(1) = p.gamma;
  well.q.c = p.gamma * p.c;
  well.lambda_map = QuadraticFunction::Zero(2);
  well.lambda_map.A(1, 1) = 1.0;
  well.lambda_map.b(1) = p.c;
  well.lambda_map.c = 0.5 * p.c * p.c - p.eta;
  well.V = QuadraticLegendre(p.alpha, 0.0);
  well.declared_conj_dom = Interval::AtLeast(-p.alpha * p.eta);

  return Problem(2, {f, ball, well}, {1, 2}, "msgao");
}

std::vector<std::string> BuiltinNames() { return {"example1", "msgao"}; }

namespace {

class ScalarLexer {
 public:
  explicit ScalarLexer(std::string_view text) : text_(text) {}

  bool AtEnd() const { return pos_ == text_.size(); }
  bool Accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  std::optional<double> Number() {
    size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
            ((text_[end] == 'e' || text_[end] == 'E') && end + 1 < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[end + 1])) ||
              text_[end + 1] == '-' || text_[end + 1] == '+')) ||
            ((text_[end] == '-' || text_[end] == '+') && end > pos_ &&
             (text_[end - 1] == 'e' || text_[end - 1] == 'E')))) {
      ++end;
    }
    if (end == pos_) return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, value);
    if (ec != std::errc() || ptr != text_.data() + end) return std::nullopt;
    pos_ = end;
    return value;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

double ParseSymbolicScalar(std::string_view text) {
  auto fail = [&]() -> double {
    throw CdtError(ErrorKind::kParse, "cannot parse scalar '" + std::string(text) + "'");
  };
  ScalarLexer lex(text);
  double sign = 1.0;
  if (lex.Accept("-")) sign = -1.0; else lex.Accept("+");
  double value = 1.0;
  bool any = false;
  if (auto coef = lex.Number()) {
    value = *coef;
    any = true;
  }
  if (lex.Accept("sqrt")) {
    const bool paren = lex.Accept("(");
    auto radicand = lex.Number();
    if (!radicand || *radicand < 0.0) return fail();
    if (paren && !lex.Accept(")")) return fail();
    value *= std::sqrt(*radicand);
    any = true;
  }
  if (!any) return fail();
  if (lex.Accept("/")) {
    auto denom = lex.Number();
    if (!denom || *denom == 0.0) return fail();
    value /= *denom;
  }
  if (!lex.AtEnd()) return fail();
  return sign * value;
}

}  // namespace cdt
