#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cdt/builtins.h"
#include "cdt/certify.h"
#include "test_support.h"

namespace cdt {
namespace {

const double kSqrt3 = std::sqrt(3.0);

PrimalDualPoint Ex1(double x, double lambda, double s1) {
  return {Vector::Constant(1, x), Vector::Constant(1, lambda), Vector{{0.0, s1}}};
}

bool Mentions(const std::vector<std::string>& items, const std::string& needle) {
  return std::any_of(items.begin(), items.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

TEST(CertifyGlobal, ExampleOneUniqueMinimum) {
  const Problem p = MakeExample1();
  const CriticalPoint cp = Classify(p, {}, Ex1(2.0 * kSqrt3, (kSqrt3 - 1.0) / 2.0, 2.0), 1e-8);
  const Certificate c = CertifyGlobal(p, {}, cp);
  EXPECT_EQ(c.verdict, Verdict::kUniqueGlobalMin);
  ASSERT_TRUE(c.value.has_value());
  EXPECT_NEAR(*c.value, 6.0 - 12.0 * kSqrt3, 1e-12);
  EXPECT_TRUE(c.solved_J.empty());
  EXPECT_EQ(c.feasible_for, IndexSet{1});
  EXPECT_TRUE(c.failed_hypotheses.empty());
  EXPECT_TRUE(c.wrongly_accepted_by.empty());
}

TEST(CertifyGlobal, ExampleOneLambdaZeroIsRejectedAndAnnotated) {
  const Problem p = MakeExample1();
  for (double s1 : {14.0 + 8.0 * kSqrt3, 14.0 - 8.0 * kSqrt3}) {
    const CriticalPoint cp = Classify(p, {}, Ex1(6.0, 0.0, s1), 1e-8);
    const Certificate c = CertifyGlobal(p, {}, cp);
    EXPECT_EQ(c.verdict, Verdict::kNoCertificate);
    EXPECT_TRUE(Mentions(c.failed_hypotheses, "lambda_1>0"));
    EXPECT_TRUE(Mentions(c.wrongly_accepted_by, "GaoRuanSherali-Th2"));
  }
}

TEST(CertifyGlobal, ExampleOneNegativeCurvature) {
  const Problem p = MakeExample1();
  const CriticalPoint cp = Classify(p, {}, Ex1(-2.0 * kSqrt3, -(kSqrt3 + 1.0) / 2.0, 2.0), 1e-8);
  const Certificate c = CertifyGlobal(p, {}, cp);
  EXPECT_EQ(c.verdict, Verdict::kNoCertificate);
  EXPECT_TRUE(Mentions(c.failed_hypotheses, "G psd"));
  // Nothing historical accepts it either, so no annotation.
  EXPECT_TRUE(c.wrongly_accepted_by.empty());
}

TEST(CertifyGlobal, EqualityVariantCertifiesSameX) {
  const Problem p = MakeExample1().WithJ({1});
  const SolveResult r = FindCriticalPoints(p, {1});
  int unique = 0;
  for (const CriticalPoint& cp : r.points) {
    const Certificate c = CertifyGlobal(p, {1}, cp);
    if (c.verdict != Verdict::kUniqueGlobalMin) continue;
    ++unique;
    EXPECT_NEAR(cp.point.x(0), 2.0 * kSqrt3, 1e-8);
  }
  EXPECT_EQ(unique, 1);
}

TEST(CertifyGlobal, IndeterminatePositivity) {
  const Problem p = MakeExample1();
  CriticalPoint cp = Classify(p, {}, Ex1(2.0 * kSqrt3, (kSqrt3 - 1.0) / 2.0, 2.0), 1e-8);
  cp.point.lambda(0) = 5e-11;
  const Certificate c = CertifyGlobal(p, {}, cp);
  EXPECT_EQ(c.verdict, Verdict::kNoCertificate);
  EXPECT_TRUE(Mentions(c.failed_hypotheses, "indeterminate"));
}

TEST(CertifyGlobal, SingularPsdGivesNonUniqueMinimum) {
  std::vector<ConstraintTerm> terms(1);
  terms[0].q = {Matrix{{1.0, 0.0}, {0.0, 0.0}}, Vector{{1.0, 0.0}}, 0.0};
  terms[0].lambda_map = QuadraticFunction::Zero(2);
  terms[0].is_quadratic = true;
  const Problem p(2, terms, {});
  const CriticalPoint cp = Classify(p, {}, {Vector{{1.0, 5.0}}, Vector(0), Vector::Zero(1)}, 1e-8);
  EXPECT_EQ(CertifyGlobal(p, {}, cp).verdict, Verdict::kGlobalMin);
}

TEST(CertifyGlobal, EmptyConvexQuadratic) {
  std::vector<ConstraintTerm> terms(1);
  terms[0].q = {Matrix::Identity(2, 2), Vector{{1.0, 2.0}}, 0.0};
  terms[0].lambda_map = QuadraticFunction::Zero(2);
  terms[0].is_quadratic = true;
  const Problem p(2, terms, {});
  const SolveResult r = FindCriticalPoints(p, {});
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(CertifyGlobal(p, {}, r.points[0]).verdict, Verdict::kUniqueGlobalMin);
}

TEST(CertifyGlobal, MsgaoTablePointsAreNotCertified) {
  const Problem p = MakeMsgao({std::sqrt(6.0) / 96.0});
  for (const CriticalPoint& cp : FindCriticalPoints(p, p.J()).points) {
    EXPECT_EQ(CertifyGlobal(p, p.J(), cp).verdict, Verdict::kNoCertificate);
  }
}

TEST(PerfectDuality, ExampleOneAllPoints) {
  const Problem p = MakeExample1();
  const SolveResult r = FindCriticalPoints(p, {});
  ASSERT_EQ(r.points.size(), 6u);
  for (const CriticalPoint& cp : r.points) {
    const PerfectDualityReport d = PerfectDualityCheck(p, cp, 1e-8);
    ASSERT_TRUE(d.applicable) << d.reason;
    EXPECT_TRUE(d.passed);
    EXPECT_LE(d.max_gap, 1e-8 * (1.0 + std::abs(d.f)));
    if (cp.point.x(0) == 6.0 || std::abs(cp.point.x(0) - 6.0) < 1e-9) EXPECT_NEAR(d.f, -18.0, 1e-9);
    if (std::abs(cp.point.x(0) - 2.0) < 1e-6) EXPECT_NEAR(d.d, -10.0, 1e-8);
  }
}

TEST(PerfectDuality, NotApplicableAwayFromStationarity) {
  const Problem p = MakeExample1();
  const CriticalPoint cp = Classify(p, {}, Ex1(1.0, 0.5, 1.0), 1e-8);
  const PerfectDualityReport d = PerfectDualityCheck(p, cp, 1e-8);
  EXPECT_FALSE(d.applicable);
  EXPECT_FALSE(d.reason.empty());
}

TEST(PerfectDuality, BuiltinsAtEveryFoundPoint) {
  for (double gamma : {std::sqrt(6.0) / 96.0, 9.0 * std::sqrt(2.0) / 8.0, 0.3}) {
    const Problem p = MakeMsgao({gamma});
    const SolveResult r = FindCriticalPoints(p, p.J());
    EXPECT_FALSE(r.points.empty());
    for (const CriticalPoint& cp : r.points) {
      const PerfectDualityReport d = PerfectDualityCheck(p, cp, 1e-8);
      EXPECT_TRUE(d.applicable && d.passed) << gamma << " " << d.reason;
    }
  }
}

// J-LKKT of Xi and J-LKKT of D agree on every found point with (lambda, sigma) in T.
TEST(ClassificationRoundTrip, XiAgainstDual) {
  std::vector<std::pair<Problem, IndexSet>> cases = {
      {MakeExample1(), {}},
      {MakeExample1(), {1}},
      {MakeMsgao({std::sqrt(6.0) / 96.0}), {1, 2}},
      {MakeMsgao({0.3}), {2}},
  };
  for (uint64_t seed = 0; seed < 6; ++seed) {
    cases.emplace_back(testing::RandomProblem(77 + seed, 2, 2), seed % 2 ? IndexSet{2} : IndexSet{});
  }
  int compared = 0;
  for (const auto& [p, J] : cases) {
    SolverConfig config;
    config.multistarts = 24;
    for (const CriticalPoint& cp : FindCriticalPoints(p, J, config).points) {
      if (!cp.d_evaluated) continue;
      EXPECT_EQ(cp.is_J_LKKT, cp.d_is_J_LKKT);
      EXPECT_EQ(cp.is_critical, cp.d_is_critical);
      ++compared;
    }
  }
  EXPECT_GT(compared, 15);
}

}  // namespace
}  // namespace cdt
