#ifndef CDT_REPORT_H_
#define CDT_REPORT_H_

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdt/certify.h"
#include "cdt/oracle.h"

namespace cdt {

enum class OutputFormat { kText, kStructured };

// One output record: a kind plus ordered key/value fields. The text writer
// prints an indented block, the structured writer one key=value line.
struct Record {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  Record& Add(std::string key, std::string value);
  Record& Add(std::string key, double value);
  Record& Add(std::string key, bool value);
  Record& Add(std::string key, const Vector& value);
};

// %.15g, with "inf"/"-inf"/"nan" spelled out.
std::string FormatNumber(double v);
std::string FormatVector(const Vector& v);

Record PointRecord(int index, const CriticalPoint& cp,
                   const Certificate& cert, const PerfectDualityReport& duality);
Record OracleRecord(const OracleResult& result);

void WriteRecord(std::ostream& out, const Record& record, OutputFormat format);

}  // namespace cdt

#endif  // CDT_REPORT_H_
