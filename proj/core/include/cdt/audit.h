#ifndef CDT_AUDIT_H_
#define CDT_AUDIT_H_

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "cdt/builtins.h"
#include "cdt/report.h"
#include "cdt/solver.h"

namespace cdt {

// Where an expected value comes from: printed in the source literature,
// recomputed here by an independent route, or exact arithmetic.
enum class Provenance { kPublished, kRecomputed, kExact };
std::string_view ProvenanceName(Provenance source);

struct AuditCheck {
  std::string id;
  std::string claim;
  Provenance source = Provenance::kRecomputed;
  std::string expected;
  std::string observed;
  bool passed = false;
};

struct AuditOptions {
  SolverConfig solver;
  // gamma picks the scenario: sqrt(6)/96 reproduces the four-point table,
  // 9 sqrt(2)/8 the unbounded dual; anything else runs the generic pipeline.
  MsgaoParams msgao{std::sqrt(6.0) / 96.0};
  long oracle_steps = 0;
};

struct AuditReport {
  std::string name;
  std::vector<AuditCheck> checks;
  std::vector<Record> details;

  bool AllPassed() const;
  const AuditCheck* FirstFailure() const;
};

std::vector<std::string> AuditNames();

// Throws CdtError(kUsage) for an unknown name.
AuditReport RunAudit(std::string_view name, const AuditOptions& options = {});

void WriteAudit(std::ostream& out, const AuditReport& report, OutputFormat format);

}  // namespace cdt

#endif  // CDT_AUDIT_H_
