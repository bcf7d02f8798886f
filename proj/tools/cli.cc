#include "cli.h"

#include <algorithm>
#include <exception>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cdt/audit.h"
#include "cdt/builtins.h"
#include "cdt/certify.h"
#include "cdt/errors.h"
#include "cdt/oracle.h"
#include "cdt/problem_io.h"
#include "cdt/report.h"
#include "cdt/solver.h"

namespace cdt {
namespace {

struct Flags {
  std::string target;
  std::string J;
  uint64_t seed = 0;
  int multistarts = 64;
  std::string box;
  double tol_feas = kDefaultFeasibilityTolerance;
  double tol_res = 1e-8;
  long steps = 0;
  std::string gamma = "sqrt6/96";
  std::string alpha = "1";
  std::string eta = "1";
  std::string radius = "4";
  std::string center = "0";
  std::string format = "text";
  int threads = 0;
};

IndexSet ParseJ(const std::string& text) {
  if (text == "none" || text.empty()) return {};
  IndexSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const int j = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(j);
    } catch (const std::exception&) {
      throw CdtError(ErrorKind::kUsage, "--J: cannot read '" + item + "'");
    }
  }
  return out;
}

std::pair<double, double> ParseBox(const std::string& text) {
  const size_t comma = text.find(',');
  if (comma == std::string::npos) throw CdtError(ErrorKind::kUsage, "--box expects lo,hi");
  const double lo = ParseSymbolicScalar(text.substr(0, comma));
  const double hi = ParseSymbolicScalar(text.substr(comma + 1));
  if (!(lo < hi)) throw CdtError(ErrorKind::kUsage, "--box needs lo < hi");
  return {lo, hi};
}

MsgaoParams ParamsFrom(const Flags& f) {
  MsgaoParams p;
  p.gamma = ParseSymbolicScalar(f.gamma);
  p.alpha = ParseSymbolicScalar(f.alpha);
  p.eta = ParseSymbolicScalar(f.eta);
  return p;
}

Problem LoadTarget(const Flags& f, std::optional<IndexSet> J) {
  Problem problem = [&] {
    if (f.target == "example1") return MakeExample1();
    if (f.target == "msgao") return MakeMsgao(ParamsFrom(f));
    return LoadProblemFile(f.target);
  }();
  if (J) problem = problem.WithJ(*J);
  return problem;
}

SolverConfig ConfigFrom(const Flags& f) {
  if (!(f.tol_feas > 0.0) || !(f.tol_res > 0.0)) {
    throw CdtError(ErrorKind::kUsage, "tolerances must be positive");
  }
  if (f.multistarts < 1) throw CdtError(ErrorKind::kUsage, "--multistarts must be >= 1");
  SolverConfig c;
  c.seed = f.seed;
  c.multistarts = f.multistarts;
  c.feasibility_tol = f.tol_feas;
  c.tol = f.tol_res;
  c.threads = f.threads;
  if (!f.box.empty()) std::tie(c.box_lo, c.box_hi) = ParseBox(f.box);
  return c;
}

OutputFormat FormatFrom(const Flags& f) {
  return f.format == "structured" ? OutputFormat::kStructured : OutputFormat::kText;
}

void PrintWarnings(const Problem& problem, std::ostream& err) {
  for (const std::string& w : problem.warnings()) err << "warning: " << w << '\n';
}

int CmdSolve(const Flags& f, std::optional<IndexSet> J, std::ostream& out, std::ostream& err) {
  const Problem problem = LoadTarget(f, J);
  PrintWarnings(problem, err);
  const SolverConfig config = ConfigFrom(f);
  const OutputFormat format = FormatFrom(f);
  const SolveResult result = FindCriticalPoints(problem, problem.J(), config);

  Record head{"problem", {}};
  head.Add("name", problem.name());
  head.Add("n", std::to_string(problem.n()));
  head.Add("m", std::to_string(problem.m()));
  head.Add("J", FormatIndexSet(problem.J()));
  head.Add("Q", FormatIndexSet(problem.Q()));
  head.Add("branches", std::to_string(result.branches));
  head.Add("starts", std::to_string(result.starts));
  head.Add("converged", std::to_string(result.converged));
  head.Add("points", std::to_string(result.points.size()));
  WriteRecord(out, head, format);

  std::vector<const CriticalPoint*> certified;
  std::vector<Certificate> certs;
  for (size_t i = 0; i < result.points.size(); ++i) {
    const CriticalPoint& cp = result.points[i];
    certs.push_back(CertifyGlobal(problem, problem.J(), cp));
    const PerfectDualityReport pd = PerfectDualityCheck(problem, cp, config.tol);
    WriteRecord(out, PointRecord(static_cast<int>(i + 1), cp, certs.back(), pd), format);
  }
  if (result.points.empty()) {
    err << "no critical point converged (" << result.converged << " of " << result.starts
        << " starts)\n";
    return kExitNoConvergence;
  }
  Record summary{"summary", {}};
  std::string line;
  for (size_t i = 0; i < certs.size(); ++i) {
    if (certs[i].verdict == Verdict::kNoCertificate) continue;
    if (!line.empty()) line += "; ";
    line += std::string(VerdictName(certs[i].verdict)) + " at x=" +
            FormatVector(result.points[i].point.x);
  }
  if (line.empty()) line = "NO_CERTIFICATE";
  if (format == OutputFormat::kStructured) {
    summary.Add("certified", line);
    WriteRecord(out, summary, format);
  } else {
    out << "certified: " << line << '\n';
  }
  return kExitOk;
}

int CmdAudit(const Flags& f, std::ostream& out, std::ostream& err) {
  AuditOptions options;
  options.solver = ConfigFrom(f);
  options.msgao = ParamsFrom(f);
  options.oracle_steps = f.steps;
  const AuditReport report = RunAudit(f.target, options);
  WriteAudit(out, report, FormatFrom(f));
  if (const AuditCheck* bad = report.FirstFailure()) {
    err << "first failing item: " << bad->id << ": " << bad->claim << " (expected " << bad->expected
        << ", observed " << bad->observed << ")\n";
    return kExitAuditFailed;
  }
  return kExitOk;
}

int CmdOracle(const Flags& f, std::optional<IndexSet> J, std::ostream& out, std::ostream& err) {
  const Problem problem = LoadTarget(f, J);
  PrintWarnings(problem, err);
  OracleGrid grid;
  const double center = ParseSymbolicScalar(f.center);
  const double radius = ParseSymbolicScalar(f.radius);
  if (!(radius > 0.0)) throw CdtError(ErrorKind::kUsage, "--radius must be positive");
  grid.lo = center - radius;
  grid.hi = center + radius;
  grid.steps = f.steps;
  if (f.steps < 0) throw CdtError(ErrorKind::kUsage, "--steps must be >= 0");
  const OracleResult result = OracleMin(problem, problem.J(), grid, std::nullopt, f.threads);
  Record r = OracleRecord(result);
  r.fields.insert(r.fields.begin(), {"J", FormatIndexSet(problem.J())});
  WriteRecord(out, r, FormatFrom(f));
  return kExitOk;
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kInvalidFunction:
      return kExitParse;
    case ErrorKind::kGuard:
      return kExitGuard;
    case ErrorKind::kUsage:
    case ErrorKind::kInvalidParameter:
      return kExitUsage;
    default:
      return kExitNoConvergence;
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical duality toolkit: critical points, certificates, audits"};
  app.require_subcommand(1);
  Flags f;
  std::optional<std::string> j_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", f.seed, "multistart seed");
    sub->add_option("--multistarts", f.multistarts, "starts per branch");
    sub->add_option("--box", f.box, "multistart box lo,hi");
    sub->add_option("--tol-feas", f.tol_feas, "feasibility tolerance");
    sub->add_option("--tol-res", f.tol_res, "residual tolerance");
    sub->add_option("--steps", f.steps, "oracle grid steps per axis");
    sub->add_option("--gamma", f.gamma, "msgao gamma (symbolic ok, e.g. 9sqrt2/8)");
    sub->add_option("--alpha", f.alpha, "msgao alpha");
    sub->add_option("--eta", f.eta, "msgao eta");
    sub->add_option("--threads", f.threads, "worker threads (0: auto)");
    sub->add_option("--format", f.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "find, classify and certify critical points");
  solve->add_option("target", f.target, "problem file, example1 or msgao")->required();
  solve->add_option("--J", j_flag, "equality indices, e.g. 1,2 or none");
  add_common(solve);

  CLI::App* audit = app.add_subcommand("audit", "run a counterexample audit");
  audit->add_option("name", f.target, "example1 or msgao")->required();
  add_common(audit);

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force grid minimum (n <= 2)");
  oracle->add_option("target", f.target, "problem file, example1 or msgao")->required();
  oracle->add_option("--J", j_flag, "equality indices");
  oracle->add_option("--radius", f.radius, "grid half-width");
  oracle->add_option("--center", f.center, "grid center");
  add_common(oracle);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::optional<IndexSet> J;
    if (j_flag) J = ParseJ(*j_flag);
    if (solve->parsed()) return CmdSolve(f, J, out, err);
    if (audit->parsed()) return CmdAudit(f, out, err);
    return CmdOracle(f, J, out, err);
  } catch (const CdtError& e) {
    if (e.kind() == ErrorKind::kGuard && oracle->parsed()) {
      err << "oracle limited to n<=2: " << e.what() << '\n';
    } else {
      err << ErrorKindName(e.kind()) << ": " << e.what() << '\n';
    }
    return ExitCodeFor(e.kind());
  }
}

}  // namespace cdt
