#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cdt/audit.h"
#include "cdt/errors.h"

namespace cdt {
namespace {

std::string Render(const AuditReport& r, OutputFormat format) {
  std::ostringstream out;
  WriteAudit(out, r, format);
  return out.str();
}

void ExpectAllPass(const AuditReport& r) {
  EXPECT_FALSE(r.checks.empty());
  for (const AuditCheck& c : r.checks) {
    EXPECT_TRUE(c.passed) << c.id << ": expected " << c.expected << ", observed " << c.observed;
  }
  EXPECT_TRUE(r.AllPassed());
  EXPECT_EQ(r.FirstFailure(), nullptr);
}

TEST(RunAudit, ExampleOne) {
  const AuditReport r = RunAudit("example1");
  ExpectAllPass(r);
  EXPECT_GE(r.checks.size(), 15u);
}

TEST(RunAudit, MsgaoTable) {
  AuditOptions o;
  o.msgao.gamma = std::sqrt(6.0) / 96.0;
  const AuditReport r = RunAudit("msgao", o);
  ExpectAllPass(r);
  bool saw_table = false;
  for (const AuditCheck& c : r.checks) saw_table = saw_table || c.id == "msgao.point3";
  EXPECT_TRUE(saw_table);
}

TEST(RunAudit, MsgaoDivergence) {
  AuditOptions o;
  o.msgao.gamma = 9.0 * std::sqrt(2.0) / 8.0;
  const AuditReport r = RunAudit("msgao-gamma", o);
  ExpectAllPass(r);
  bool saw = false;
  for (const AuditCheck& c : r.checks) saw = saw || c.id == "msgao.diverges";
  EXPECT_TRUE(saw);
}

TEST(RunAudit, GenericGammaRunsThePipeline) {
  AuditOptions o;
  o.msgao.gamma = 0.3;
  const AuditReport r = RunAudit("msgao", o);
  ExpectAllPass(r);
  EXPECT_FALSE(r.details.empty());
}

TEST(RunAudit, UnknownName) {
  try {
    RunAudit("unknown");
    FAIL();
  } catch (const CdtError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUsage);
  }
}

TEST(RunAudit, EveryCheckCarriesProvenance) {
  const std::string text = Render(RunAudit("example1"), OutputFormat::kText);
  EXPECT_NE(text.find("[source=published]"), std::string::npos);
  EXPECT_NE(text.find("[source=recomputed]"), std::string::npos);
  EXPECT_NE(text.find("[source=exact]"), std::string::npos);
  const std::string structured = Render(RunAudit("example1"), OutputFormat::kStructured);
  std::istringstream lines(structured);
  std::string line;
  int checks = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("record=check ", 0) != 0) continue;
    ++checks;
    EXPECT_NE(line.find(" source="), std::string::npos) << line;
    EXPECT_NE(line.find(" status=PASS"), std::string::npos) << line;
  }
  EXPECT_GE(checks, 15);
}

TEST(RunAudit, ByteIdenticalAcrossRunsAndThreadCounts) {
  AuditOptions a;
  a.solver.seed = 7;
  a.solver.threads = 1;
  AuditOptions b = a;
  b.solver.threads = 6;
  const std::string first = Render(RunAudit("example1", a), OutputFormat::kStructured);
  EXPECT_EQ(first, Render(RunAudit("example1", a), OutputFormat::kStructured));
  EXPECT_EQ(first, Render(RunAudit("example1", b), OutputFormat::kStructured));
}

TEST(AuditReport, FirstFailure) {
  AuditReport r;
  r.checks.push_back({"a", "ok", Provenance::kExact, "1", "1", true});
  r.checks.push_back({"b", "bad", Provenance::kPublished, "1", "2", false});
  r.checks.push_back({"c", "bad too", Provenance::kPublished, "1", "3", false});
  ASSERT_NE(r.FirstFailure(), nullptr);
  EXPECT_EQ(r.FirstFailure()->id, "b");
  EXPECT_FALSE(r.AllPassed());
  EXPECT_NE(Render(r, OutputFormat::kText).find("FAIL b"), std::string::npos);
}

}  // namespace
}  // namespace cdt
