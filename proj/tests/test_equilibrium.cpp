#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "qbos/equilibrium.hpp"

using namespace qbos;

namespace {

// Brute force: for each profile, every unilateral deviation, payoffs via the
// independent oracle.
struct NaiveResult {
  std::vector<std::pair<std::size_t, std::size_t>> equilibria;
  double min_best_gain = INFINITY;
};

NaiveResult naive_scan(const GameConfig& cfg, const GridPair& grids, double eps) {
  const auto as = enumerate_grid(cfg.alice_class, grids.alice);
  const auto bs = enumerate_grid(cfg.bob_class, grids.bob);
  const oracle::V4 init{cfg.initial_state[0], cfg.initial_state[1], cfg.initial_state[2], cfg.initial_state[3]};
  const bool bare = cfg.protocol.kind == Protocol::Kind::Bare;
  const auto pay = [&](const StrategyParams& a, const StrategyParams& b) {
    const auto s = oracle::final_state(init, cfg.protocol.gamma, oracle::strategy(a.theta, a.alpha, a.beta),
                                       oracle::strategy(b.theta, b.alpha, b.beta), !bare);
    std::array<double, 2> out{0, 0};
    for (std::size_t k = 0; k < 4; ++k) {
      out[0] += std::norm(s[k]) * cfg.payoffs.entries[k].alice;
      out[1] += std::norm(s[k]) * cfg.payoffs.entries[k].bob;
    }
    return out;
  };
  NaiveResult r;
  for (std::size_t i = 0; i < as.size(); ++i)
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const auto p = pay(as[i], bs[j]);
      double ga = -INFINITY, gb = -INFINITY;
      for (const auto& d : as) ga = std::max(ga, pay(d, bs[j])[0] - p[0]);
      for (const auto& d : bs) gb = std::max(gb, pay(as[i], d)[1] - p[1]);
      r.min_best_gain = std::min(r.min_best_gain, std::max(ga, gb));
      if (ga <= eps && gb <= eps) r.equilibria.push_back({i, j});
    }
  return r;
}

GameConfig random_game(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  GameConfig g;
  StateVector4 s;
  double norm = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    s[k] = Complex{n(rng), n(rng)};
    norm += std::norm(s[k]);
  }
  for (std::size_t k = 0; k < 4; ++k) s[k] /= std::sqrt(norm);
  g.initial_state = s;
  std::uniform_int_distribution<int> v(0, 3);
  for (auto& e : g.payoffs.entries) e = Payoffs{double(v(rng)), double(v(rng))};
  g.protocol = Protocol::eisert(std::uniform_real_distribution<double>(0, kPi / 2)(rng));
  return g;
}

}  // namespace

TEST(BestResponse, ClassicalReplies) {
  GameConfig g;
  g.alice_class = g.bob_class = StrategyClass::Classical1;
  const auto grid = GridSpec::uniform(8);
  // Against Bob's identity (outcome F for him) Alice's best is to stay F: payoff 1.
  auto [s, v] = best_response(g, Player::Alice, identity_strategy(StrategyClass::Classical1), grid);
  EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_EQ(s.theta, 0.0);
  std::tie(s, v) = best_response(g, Player::Bob, flip_strategy(StrategyClass::Classical1), grid);
  EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.theta, kPi);
}

TEST(BestResponse, TiesGoToSmallestIndex) {
  GameConfig g;
  g.payoffs.entries = {Payoffs{1, 1}, Payoffs{1, 1}, Payoffs{1, 1}, Payoffs{1, 1}};
  const auto [s, v] = best_response(g, Player::Alice, identity_strategy(), GridSpec::uniform(4));
  EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_EQ(s, enumerate_grid(StrategyClass::Full3, GridSpec::uniform(4)).front());
}

TEST(Verify, ClassicalPureProfiles) {
  GameConfig g;
  g.alice_class = g.bob_class = StrategyClass::Classical1;
  const GridPair grids{GridSpec::uniform(64), GridSpec::uniform(64)};
  const auto id = identity_strategy(StrategyClass::Classical1), fl = flip_strategy(StrategyClass::Classical1);
  auto r = verify_epsilon_nash(g, make_profile(g, id, id), grids);
  EXPECT_EQ(r.verdict, Verdict::Verified);
  ASSERT_TRUE(r.best_deviation);
  EXPECT_LE(r.best_deviation->gain, 1e-12);
  r = verify_epsilon_nash(g, make_profile(g, id, fl), grids);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_NEAR(r.best_deviation->gain, 2.0, 1e-12);
}

TEST(Verify, RecomputesPayoffsAndHonoursEpsilon) {
  GameConfig g;
  const auto grids = GridPair{GridSpec::uniform(8), GridSpec::uniform(8)};
  Profile bogus{identity_strategy(), identity_strategy(), Payoffs{100, 100}};
  const auto r = verify_epsilon_nash(g, bogus, grids);
  EXPECT_NEAR(r.profile.payoffs.alice, 1.0, 1e-12);
  const double gain = r.best_deviation->gain;
  ASSERT_GT(gain, 0.0);
  EXPECT_EQ(verify_epsilon_nash(g, bogus, grids, gain).verdict, Verdict::Verified);
  EXPECT_EQ(verify_epsilon_nash(g, bogus, grids, std::nextafter(gain, 0.0)).verdict, Verdict::Refuted);
}

TEST(Scan, MatchesBruteForceOnRandomGames) {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 6; ++n) {
    GameConfig g = random_game(rng);
    g.alice_class = n % 2 ? StrategyClass::Phase2 : StrategyClass::Full3;
    g.bob_class = n % 3 ? StrategyClass::Classical1 : StrategyClass::Phase2;
    const GridPair grids{GridSpec{4, 3, 2, n % 2 == 0}, GridSpec{5, 4, 2, true}};
    const auto naive = naive_scan(g, grids, 1e-9);
    const auto eqs = nash_scan(g, grids, 1e-9);
    ASSERT_EQ(eqs.size(), naive.equilibria.size()) << "game " << n;
    const auto as = enumerate_grid(g.alice_class, grids.alice);
    const auto bs = enumerate_grid(g.bob_class, grids.bob);
    for (std::size_t k = 0; k < eqs.size(); ++k) {
      EXPECT_EQ(eqs[k].profile.alice, as[naive.equilibria[k].first]);
      EXPECT_EQ(eqs[k].profile.bob, bs[naive.equilibria[k].second]);
      EXPECT_EQ(eqs[k].verdict, Verdict::Verified);
    }
    EXPECT_NEAR(certify_no_equilibrium(g, grids).min_best_gain, naive.min_best_gain, 1e-12);
  }
}

TEST(Scan, ReportsAreConsistentWithVerify) {
  GameConfig g;
  g.initial_state = named_state(NamedState::BB);
  g.alice_class = StrategyClass::Phase2;
  g.bob_class = StrategyClass::Classical1;
  const GridPair grids{GridSpec::uniform(16), GridSpec::uniform(16)};
  const auto eqs = nash_scan(g, grids);
  ASSERT_FALSE(eqs.empty());
  for (const auto& e : eqs) {
    const auto r = verify_epsilon_nash(g, e.profile, grids, kScanEpsilon);
    EXPECT_EQ(r.verdict, Verdict::Verified);
    EXPECT_EQ(r.profile.payoffs, e.profile.payoffs);
    ASSERT_TRUE(e.best_deviation);
    EXPECT_NEAR(r.best_deviation->gain, e.best_deviation->gain, 1e-15);
  }
  EXPECT_TRUE(std::is_sorted(eqs.begin(), eqs.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.profile.alice.key(), a.profile.bob.key()) <
           std::tuple(b.profile.alice.key(), b.profile.bob.key());
  }));
}

TEST(Scan, DeterministicAcrossThreadCounts) {
  GameConfig g;
  g.initial_state = named_state(NamedState::FF);
  g.alice_class = g.bob_class = StrategyClass::Phase2;
  const GridPair grids{GridSpec::uniform(8), GridSpec::uniform(8)};
  ScanOptions one, many;
  one.threads = 1;
  many.threads = 5;
  const LatticeScan a(g, grids, one), b(g, grids, many);
  EXPECT_EQ(nash_scan(a), nash_scan(b));
  EXPECT_EQ(certify_no_equilibrium(a), certify_no_equilibrium(b));
  EXPECT_EQ(nash_scan(a), nash_scan(a));
}

TEST(Scan, CertificateWitnessAttainsMinimum) {
  GameConfig g;
  g.initial_state = named_state(NamedState::BB);
  const GridPair grids{GridSpec::uniform(4), GridSpec::uniform(4)};
  const auto c = certify_no_equilibrium(g, grids);
  const auto r = verify_epsilon_nash(g, c.witness, grids);
  EXPECT_NEAR(r.best_deviation->gain, c.min_best_gain, 1e-14);
  EXPECT_EQ(c.grids, grids);
}

TEST(Scan, EvaluationCap) {
  GameConfig g;
  const GridPair huge{GridSpec::uniform(64), GridSpec::uniform(64)};
  EXPECT_DOUBLE_EQ(scan_evaluations(g, huge), 2.0 * 262144.0 * 262144.0);
  try {
    LatticeScan s(g, huge);
    FAIL() << "expected ResourceCapError";
  } catch (const ResourceCapError& e) {
    EXPECT_GT(e.required(), kEvaluationCap);
  }
  ScanOptions small;
  small.evaluation_cap = 100;
  const GridPair tiny{GridSpec::uniform(4), GridSpec::uniform(4)};
  EXPECT_THROW(nash_scan(g, tiny, kScanEpsilon, small), ResourceCapError);
  small.override_cap = true;
  EXPECT_NO_THROW(nash_scan(g, tiny, kScanEpsilon, small));
}

TEST(Scan, InvalidGridRejected) {
  GameConfig g;
  EXPECT_THROW(nash_scan(g, GridPair{GridSpec{8, 1, 8, true}, GridSpec::uniform(8)}), std::invalid_argument);
}
