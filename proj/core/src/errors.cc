#include "cdt/errors.h"

namespace cdt {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter:
      return "invalid-parameter";
    case ErrorKind::kInvalidFunction:
      return "invalid-function";
    case ErrorKind::kDomainExit:
      return "domain-exit";
    case ErrorKind::kNotInTcol:
      return "not-in-T_col";
    case ErrorKind::kUndefinedGradient:
      return "undefined-gradient";
    case ErrorKind::kNotApplicable:
      return "check-not-applicable";
    case ErrorKind::kInfeasibleOnGrid:
      return "infeasible-on-grid";
    case ErrorKind::kParse:
      return "parse-error";
    case ErrorKind::kGuard:
      return "guard-exceeded";
    case ErrorKind::kUsage:
      return "usage-error";
  }
  return "unknown";
}

}  // namespace cdt
