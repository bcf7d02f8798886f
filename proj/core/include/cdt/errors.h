#ifndef CDT_ERRORS_H_
#define CDT_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdt {

enum class ErrorKind {
  kInvalidParameter,
  kInvalidFunction,
  kDomainExit,
  kNotInTcol,
  kUndefinedGradient,
  kNotApplicable,
  kInfeasibleOnGrid,
  kParse,
  kGuard,
  kUsage,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure the library reports carries one of the kinds above so that
// callers (the CLI in particular) can map it onto a stable exit code.
class CdtError : public std::runtime_error {
 public:
  CdtError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cdt

#endif  // CDT_ERRORS_H_
