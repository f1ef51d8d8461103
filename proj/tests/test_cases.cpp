#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "qbos/cases.hpp"

using namespace qbos;

TEST(Cases, TagsRoundTrip) {
  std::set<std::string_view> seen;
  for (auto t : kAllCases) {
    EXPECT_EQ(parse_case_tag(to_string(t)), t);
    seen.insert(to_string(t));
  }
  EXPECT_EQ(seen.size(), 12u);
  EXPECT_FALSE(parse_case_tag("case-4x4").has_value());
}

TEST(Cases, BundlesAreValid) {
  for (auto t : kAllCases) {
    const auto b = case_bundle(t);
    EXPECT_NO_THROW(b.run.game.validate());
    EXPECT_LE(scan_evaluations(b.run.game, b.run.grids), kEvaluationCap) << to_string(t);
    EXPECT_EQ(b.run.epsilon, kScanEpsilon);
  }
  EXPECT_EQ(case_bundle(CaseTag::Case2x1FF).run.grids.alice.theta_steps, kStepsPiOver32);
  EXPECT_EQ(case_bundle(CaseTag::CaseClassicalBB).run.grids.bob.theta_steps, kStepsPiOver64);
  EXPECT_EQ(case_bundle(CaseTag::Case3x3).run.grids.alice.theta_steps, kStepsPiOver8);
}

// Standard battle of the sexes, rows/columns (F, B): the mixed point from
// the indifference formula, mapped to rotation angles.
TEST(Cases, MixedPointMatchesBimatrixOracle) {
  const auto pq = oracle::mixed_2x2({{{1, 0}, {0, 2}}}, {{{2, 0}, {0, 1}}});
  EXPECT_NEAR(pq[0], 1.0 / 3.0, 1e-15);  // Alice plays F
  EXPECT_NEAR(pq[1], 2.0 / 3.0, 1e-15);  // Bob plays F
  // From |BB>, x^2 = cos^2(theta/2) is the probability of staying at B.
  GameConfig g;
  g.protocol = Protocol::bare();
  g.initial_state = named_state(NamedState::BB);
  g.alice_class = g.bob_class = StrategyClass::Classical1;
  const auto claims = cases_detail::mixed_equilibrium_claims(g, 1 - pq[0], 1 - pq[1], 128);
  for (const auto& c : claims) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  // A perturbed point is not an equilibrium.
  const auto off = cases_detail::mixed_equilibrium_claims(g, 0.6, 1 - pq[1], 128);
  EXPECT_FALSE(off[0].pass);
}

TEST(Cases, ExtremaOracle) {
  const auto s = cases_detail::extrema_oracle(7, 200, 48);
  EXPECT_LE(s.max_error, 1e-10);
  EXPECT_LE(s.min_error, 1e-10);
  EXPECT_LE(s.dense_excess, 1e-10);
  EXPECT_LE(s.ratio_error, 1e-10);
  EXPECT_LE(s.dual_form_error, 1e-12);
}

TEST(Cases, QuarterTurnFamilySignCoupling) {
  for (bool ff : {true, false}) {
    for (const auto& c : cases_detail::quarter_turn_family(ff)) {
      const auto k = closed_form::uvzw(c.alice, c.bob);
      EXPECT_NEAR(std::abs(k.z), 1.0, 1e-12);
      EXPECT_EQ(k.u * k.v * k.z > 0, ff) << c.label;
    }
  }
}

class CheapCase : public ::testing::TestWithParam<CaseTag> {};

TEST_P(CheapCase, AllClaimsPass) {
  const auto out = run_case(GetParam());
  for (const auto& c : out.claims) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  EXPECT_EQ(out.report.case_tag, to_string(GetParam()));
  EXPECT_FALSE(out.report.summary.empty());
}

INSTANTIATE_TEST_SUITE_P(Fast, CheapCase,
                         ::testing::Values(CaseTag::Case2x2FF, CaseTag::Case2x2BB, CaseTag::Case2x1FF,
                                           CaseTag::Case2x1BB, CaseTag::CaseClassicalFF, CaseTag::CaseClassicalBB,
                                           CaseTag::CaseBareBB, CaseTag::CaseBareFF, CaseTag::CaseBarePlus,
                                           CaseTag::CaseBareIFF, CaseTag::CaseBareFFI),
                         [](const auto& info) {
                           std::string s(to_string(info.param));
                           for (auto& ch : s)
                             if (ch == '-') ch = '_';
                           return s;
                         });

TEST(Cases, SeedChangesSamplesNotVerdicts) {
  const auto a = run_case(CaseTag::CaseBarePlus, 0), b = run_case(CaseTag::CaseBarePlus, 12345);
  EXPECT_EQ(a.report.equilibria, b.report.equilibria);
  EXPECT_TRUE(a.all_pass());
  EXPECT_TRUE(b.all_pass());
}

TEST(Cases, ClassicalEquilibriaSurviveRefinedGrid) {
  const GridPair fine{GridSpec::uniform(2 * kStepsPiOver64), GridSpec::uniform(2 * kStepsPiOver64)};
  for (auto s : {NamedState::FF, NamedState::BB}) {
    GameConfig g;
    g.initial_state = named_state(s);
    g.alice_class = g.bob_class = StrategyClass::Classical1;
    for (const auto& e : nash_scan(g, GridPair{GridSpec::uniform(kStepsPiOver64), GridSpec::uniform(kStepsPiOver64)}))
      EXPECT_EQ(verify_epsilon_nash(g, e.profile, fine, kScanEpsilon).verdict, Verdict::Verified);
    const bool ff = s == NamedState::FF;
    for (const auto& c : cases_detail::mixed_equilibrium_claims(g, ff ? 1.0 / 3 : 2.0 / 3, ff ? 2.0 / 3 : 1.0 / 3,
                                                                2 * kStepsPiOver64))
      EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  }
}
