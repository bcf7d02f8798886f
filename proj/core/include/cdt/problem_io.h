#ifndef CDT_PROBLEM_IO_H_
#define CDT_PROBLEM_IO_H_

#include <string>

#include "cdt/problem.h"

namespace cdt {

// Problem files are JSON:
//   {"n": 1, "m": 1, "J": [1],
//    "terms": [{"A": [...], "b": [...], "c": 0, "C": [...], "d": [...], "e": 0,
//               "V": {"kind": "quadratic", "a": 1, "shift": 0}, "quadratic": false}]}
// Matrices are row-major lists of n*n numbers; missing A, C, b, d are zero.
// Plug-in pairs are {"kind": "plugin", "name": "exp"}. Every V is run
// through ValidateLegendre. Throws CdtError(kParse) with a location.
Problem ParseProblem(const std::string& text, const std::string& origin = "<input>");
Problem LoadProblemFile(const std::string& path);

std::string SerializeProblem(const Problem& problem);

}  // namespace cdt

#endif  // CDT_PROBLEM_IO_H_
