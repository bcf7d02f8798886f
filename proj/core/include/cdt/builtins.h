#ifndef CDT_BUILTINS_H_
#define CDT_BUILTINS_H_

#include <string>
#include <string_view>
#include <vector>

#include "cdt/problem.h"

namespace cdt {

// f(x) = x^2/2 - 6x subject to the double-well g_1(x) = (x^2/2 - 4)^2/2 - 2 <= 0,
// encoded with Lambda_1 = x^2/2 - 4 and V_1(t) = t^2/2 - 2. No equalities.
Problem MakeExample1();

// The two-block instance in variables (y, z), one coordinate each:
//   f = (y - z)^2 / 2,
//   g_1 = (a y^2 - r^2) / 2                              (quadratic),
//   g_2 = -gamma (z - c) + V(Lambda(z)),  Lambda(z) = (z - c)^2/2 - eta,
//   V(t) = alpha t^2 / 2,
// with J = {1, 2}. Term 2 carries the historical conjugate domain [-alpha eta, inf).
struct MsgaoParams {
  double gamma = 0.0;
  double alpha = 1.0;
  double eta = 1.0;
  double r = 1.0;
  double c = 1.0;
  double a = 1.0;
};

Problem MakeMsgao(const MsgaoParams& params);

std::vector<std::string> BuiltinNames();

// Parses "3", "-0.25", "sqrt6/96", "9sqrt2/8", "sqrt(6)/96", "1/3" to full
// double precision. Throws CdtError(kParse).
double ParseSymbolicScalar(std::string_view text);

}  // namespace cdt

#endif  // CDT_BUILTINS_H_
