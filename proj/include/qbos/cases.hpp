// cases.hpp
// Canned reproduction bundles. Each tag fixes a game configuration, a scan
// lattice and epsilon, runs the scan, and checks a list of expected claims
// about the equilibrium structure of that quantum battle of the sexes
// variant.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbos/closed_form.hpp"
#include "qbos/config_io.hpp"
#include "qbos/engine.hpp"
#include "qbos/equilibrium.hpp"
#include "qbos/report.hpp"
#include "qbos/strategy.hpp"

namespace qbos {

enum class CaseTag {
  Case3x3,
  Case2x2FF,
  Case2x2BB,
  Case2x1FF,
  Case2x1BB,
  CaseClassicalFF,
  CaseClassicalBB,
  CaseBareBB,
  CaseBareFF,
  CaseBarePlus,
  CaseBareIFF,
  CaseBareFFI,
};

inline constexpr std::array kAllCases = {
    CaseTag::Case3x3,         CaseTag::Case2x2FF,       CaseTag::Case2x2BB,  CaseTag::Case2x1FF,
    CaseTag::Case2x1BB,       CaseTag::CaseClassicalFF, CaseTag::CaseClassicalBB, CaseTag::CaseBareBB,
    CaseTag::CaseBareFF,      CaseTag::CaseBarePlus,    CaseTag::CaseBareIFF, CaseTag::CaseBareFFI,
};

inline std::string_view to_string(CaseTag t) {
  switch (t) {
    case CaseTag::Case3x3: return "case-3x3";
    case CaseTag::Case2x2FF: return "case-2x2-ff";
    case CaseTag::Case2x2BB: return "case-2x2-bb";
    case CaseTag::Case2x1FF: return "case-2x1-ff";
    case CaseTag::Case2x1BB: return "case-2x1-bb";
    case CaseTag::CaseClassicalFF: return "case-classical-ff";
    case CaseTag::CaseClassicalBB: return "case-classical-bb";
    case CaseTag::CaseBareBB: return "case-bare-bb";
    case CaseTag::CaseBareFF: return "case-bare-ff";
    case CaseTag::CaseBarePlus: return "case-bare-plus";
    case CaseTag::CaseBareIFF: return "case-bare-iff";
    case CaseTag::CaseBareFFI: return "case-bare-ffi";
  }
  return "?";
}

inline std::optional<CaseTag> parse_case_tag(std::string_view s) {
  for (auto t : kAllCases)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

// Lattice resolutions, as step counts over [0, 2pi).
inline constexpr std::size_t kStepsPiOver4 = 8;
inline constexpr std::size_t kStepsPiOver8 = 16;
inline constexpr std::size_t kStepsPiOver32 = 64;
inline constexpr std::size_t kStepsPiOver64 = 128;

// Brute-force value of the 3x3 |BB> certificate at step pi/8 is
// 0.49999999999999911; the fixture threshold leaves 1e-9 of slack.
inline constexpr double kCertificate3x3Threshold = 0.5 - 1e-9;

struct CaseBundle {
  CaseTag tag;
  RunSpec run;
  std::string description;
};

inline CaseBundle case_bundle(CaseTag tag) {
  RunSpec run;
  GameConfig& g = run.game;
  const auto grids = [](std::size_t n) { return GridPair{GridSpec::uniform(n), GridSpec::uniform(n)}; };
  std::string text;
  switch (tag) {
    case CaseTag::Case3x3:
      g.initial_state = named_state(NamedState::BB);
      run.grids = grids(kStepsPiOver8);
      text = "maximal entanglement, |BB>, unrestricted strategies on both sides";
      break;
    case CaseTag::Case2x2FF:
    case CaseTag::Case2x2BB:
      g.initial_state = named_state(tag == CaseTag::Case2x2FF ? NamedState::FF : NamedState::BB);
      g.alice_class = g.bob_class = StrategyClass::Phase2;
      run.grids = grids(kStepsPiOver8);
      text = "maximal entanglement, phase-restricted (beta = delta = 0) strategies";
      break;
    case CaseTag::Case2x1FF:
    case CaseTag::Case2x1BB:
      g.initial_state = named_state(tag == CaseTag::Case2x1FF ? NamedState::FF : NamedState::BB);
      g.alice_class = StrategyClass::Phase2;
      g.bob_class = StrategyClass::Classical1;
      run.grids = grids(kStepsPiOver32);
      text = "maximal entanglement, phase-restricted Alice against classical Bob";
      break;
    case CaseTag::CaseClassicalFF:
    case CaseTag::CaseClassicalBB:
      g.initial_state = named_state(tag == CaseTag::CaseClassicalFF ? NamedState::FF : NamedState::BB);
      g.alice_class = g.bob_class = StrategyClass::Classical1;
      run.grids = grids(kStepsPiOver64);
      text = "maximal entanglement, classical (real rotation) strategies";
      break;
    case CaseTag::CaseBareBB:
    case CaseTag::CaseBareFF:
      g.protocol = Protocol::bare();
      g.initial_state = named_state(tag == CaseTag::CaseBareFF ? NamedState::FF : NamedState::BB);
      run.grids = grids(kStepsPiOver4);
      text = "no entangler, product initial state, unrestricted strategies";
      break;
    case CaseTag::CaseBarePlus:
    case CaseTag::CaseBareIFF:
    case CaseTag::CaseBareFFI: {
      g.protocol = Protocol::bare();
      const NamedState s = tag == CaseTag::CaseBarePlus  ? NamedState::Plus
                           : tag == CaseTag::CaseBareIFF ? NamedState::IFF
                                                         : NamedState::FFI;
      g.initial_state = named_state(s);
      run.grids = grids(kStepsPiOver4);
      text = "no entangler, entangled initial state, unrestricted strategies";
      break;
    }
  }
  run.epsilon = kScanEpsilon;
  return CaseBundle{tag, run, text};
}

struct Claim {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CaseOutcome {
  RunReport report;
  std::vector<Claim> claims;

  bool all_pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
  }
};

namespace cases_detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool pays(const Payoffs& p, double alice, double bob, double tol) {
  return near(p.alice, alice, tol) && near(p.bob, bob, tol);
}

inline StrategyParams random_strategy(StrategyClass cls, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  StrategyParams p{angle(rng), angle(rng), angle(rng), cls};
  return canonicalize(p);
}

// Unitarity, norm conservation and (for the default table) the payoff-sum
// identity alice + bob = 3 (p_FF + p_BB), on seeded samples and on every
// reported equilibrium.
inline Claim invariants_claim(const GameConfig& config, const std::vector<EquilibriumReport>& eqs,
                              std::uint64_t seed, std::size_t samples = 2000) {
  std::mt19937_64 rng(seed);
  const bool bos = config.payoffs == PayoffTable::battle_of_the_sexes();
  double unitarity = 0, norm = 0, sum = 0;
  const auto check = [&](const StrategyParams& a, const StrategyParams& b) {
    const Matrix2 ua = to_unitary(a), ub = to_unitary(b);
    unitarity = std::max({unitarity, unitarity_defect(ua), unitarity_defect(ub), unitarity_defect(kron(ua, ub))});
    const StateVector4 s = evolve(config, a, b);
    norm = std::max(norm, std::abs(s.norm_squared() - 1.0));
    if (bos) {
      const auto p = outcome_probs(s);
      const Payoffs pay = expected_payoffs(s, config.payoffs);
      sum = std::max(sum, std::abs(pay.alice + pay.bob - 3.0 * (p[kFF] + p[kBB])));
    }
  };
  for (std::size_t k = 0; k < samples; ++k) {
    const auto a = random_strategy(config.alice_class, rng);
    const auto b = random_strategy(config.bob_class, rng);
    check(a, b);
  }
  for (const auto& e : eqs) check(e.profile.alice, e.profile.bob);
  const bool pass = unitarity <= kUnitarityTol && norm <= kNormTol && sum <= 1e-12;
  return Claim{"unitarity, norm conservation and payoff-sum identity hold",
               pass,
               "max unitarity defect " + fmt(unitarity) + ", max norm drift " + fmt(norm) +
                   ", max payoff-sum error " + fmt(sum) + " over " + std::to_string(samples + eqs.size()) +
                   " profiles"};
}

inline Claim all_pay_claim(const std::vector<EquilibriumReport>& eqs, double alice, double bob, double tol) {
  std::size_t bad = 0;
  for (const auto& e : eqs)
    if (!pays(e.profile.payoffs, alice, bob, tol)) ++bad;
  return Claim{"all verified equilibria pay (" + fmt(alice) + "," + fmt(bob) + ")",
               !eqs.empty() && bad == 0,
               std::to_string(eqs.size()) + " equilibria, " + std::to_string(bad) + " with other payoffs"};
}

struct NamedCheck {
  std::string label;
  StrategyParams alice, bob;
};

// Verifies each named profile at analytic epsilon on the given deviation
// lattice and checks its payoffs.
inline Claim named_profiles_claim(const std::string& name, const GameConfig& config,
                                  const std::vector<NamedCheck>& checks, std::size_t deviation_steps,
                                  std::optional<Payoffs> expected) {
  const GridPair dev{GridSpec::uniform(deviation_steps), GridSpec::uniform(deviation_steps)};
  std::size_t failed = 0;
  double worst_gain = 0.0;
  std::string first_failure;
  for (const auto& c : checks) {
    const auto r = verify_epsilon_nash(config, make_profile(config, c.alice, c.bob), dev, kAnalyticEpsilon);
    worst_gain = std::max(worst_gain, r.best_deviation ? r.best_deviation->gain : 0.0);
    const bool payoff_ok = !expected || pays(r.profile.payoffs, expected->alice, expected->bob, 1e-9);
    if (r.verdict != Verdict::Verified || !payoff_ok) {
      if (failed++ == 0)
        first_failure = "; first failure " + c.label + " payoffs (" + fmt(r.profile.payoffs.alice) + "," +
                        fmt(r.profile.payoffs.bob) + ")";
    }
  }
  return Claim{name, failed == 0 && !checks.empty(),
               std::to_string(checks.size()) + " profiles on a " + std::to_string(deviation_steps) +
                   "-step deviation grid, max gain " + fmt(worst_gain) + first_failure};
}

inline StrategyParams strat(double theta, double alpha, double beta, StrategyClass cls) {
  return canonicalize(StrategyParams{theta, alpha, beta, cls});
}

// theta = omega = +-pi/2 family with |z| = 1. The sign of z must match the
// sign of u v for |FF> (so that |u z + v| = 1) and oppose it for |BB>.
inline std::vector<NamedCheck> quarter_turn_family(bool from_ff) {
  std::vector<NamedCheck> out;
  const std::array<double, 2> thetas{kPi / 2, 3 * kPi / 2};
  const std::array<double, 4> alice_phase{0.0, kPi / 4, kPi / 2, 5 * kPi / 4};
  for (double t : thetas)
    for (double w : thetas) {
      const bool uv_positive = t == w;
      const bool z_plus = uv_positive == from_ff;
      const double phase_sum = z_plus ? kPi / 2 : 3 * kPi / 2;
      for (double a : alice_phase)
        out.push_back({"theta=" + fmt(t) + ",omega=" + fmt(w) + ",alpha=" + fmt(a),
                       strat(t, a, 0, StrategyClass::Phase2), strat(w, phase_sum - a, 0, StrategyClass::Phase2)});
    }
  return out;
}

inline double circular_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

inline double mixed_theta(double prob_f) { return 2.0 * std::acos(std::sqrt(prob_f)); }

// x^2 = cos^2(theta/2) rounded to {0, 1} when within tol, else -1.
inline int pure_level(double theta, double tol = 1e-12) {
  const double x2 = std::pow(std::cos(theta / 2), 2);
  if (x2 <= tol) return 0;
  if (x2 >= 1 - tol) return 1;
  return -1;
}

inline Claim pure_equilibria_claim(const std::vector<EquilibriumReport>& eqs) {
  std::set<std::pair<int, int>> levels;
  bool interior = false;
  for (const auto& e : eqs) {
    const int la = pure_level(e.profile.alice.theta), lb = pure_level(e.profile.bob.theta);
    if (la < 0 || lb < 0) interior = true;
    levels.insert({la, lb});
  }
  const std::set<std::pair<int, int>> expected{{0, 0}, {1, 1}};
  std::string found;
  for (const auto& [a, b] : levels) found += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return Claim{"pure equilibria exactly at (x^2,y^2) = (1,1) and (0,0)", !interior && levels == expected,
               std::to_string(eqs.size()) + " lattice equilibria, levels " + found};
}

// Mixed equilibrium of the classical game, checked through indifference:
// against the opponent's mixture every own strategy pays the same.
inline std::vector<Claim> mixed_equilibrium_claims(const GameConfig& config, double alice_prob_f, double bob_prob_f,
                                                   std::size_t deviation_steps) {
  const StrategyParams a = strat(mixed_theta(alice_prob_f), 0, 0, config.alice_class);
  const StrategyParams b = strat(mixed_theta(bob_prob_f), 0, 0, config.bob_class);
  const Evaluator eval(config);
  const GridSpec g = GridSpec::uniform(deviation_steps);
  double lo_a = 1e300, hi_a = -1e300, lo_b = 1e300, hi_b = -1e300;
  for (const auto& s : enumerate_grid(config.alice_class, g)) {
    const double v = eval.payoffs(s, b).alice;
    lo_a = std::min(lo_a, v);
    hi_a = std::max(hi_a, v);
  }
  for (const auto& s : enumerate_grid(config.bob_class, g)) {
    const double v = eval.payoffs(a, s).bob;
    lo_b = std::min(lo_b, v);
    hi_b = std::max(hi_b, v);
  }
  const Payoffs p = eval.payoffs(a, b);
  const auto r = verify_epsilon_nash(config, Profile{a, b, p}, GridPair{g, g}, kAnalyticEpsilon);
  const std::string where = "(x^2,y^2) = (" + fmt(alice_prob_f) + "," + fmt(bob_prob_f) + ")";
  return {
      Claim{"indifference at " + where, (hi_a - lo_a) <= 1e-12 && (hi_b - lo_b) <= 1e-12,
            "alice payoff spread " + fmt(hi_a - lo_a) + ", bob payoff spread " + fmt(hi_b - lo_b)},
      Claim{"mixed equilibrium at " + where + " verified with payoffs (2/3,2/3)",
            r.verdict == Verdict::Verified && pays(p, 2.0 / 3.0, 2.0 / 3.0, 1e-9),
            "payoffs (" + fmt(p.alice) + "," + fmt(p.bob) + "), max gain " + fmt(r.best_deviation->gain)},
  };
}

inline Claim equal_payoffs_claim(const GameConfig& config, const LatticeScan& scan, std::uint64_t seed,
                                 std::size_t samples) {
  std::mt19937_64 rng(seed);
  const Evaluator eval(config);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Payoffs p = eval.payoffs(random_strategy(config.alice_class, rng), random_strategy(config.bob_class, rng));
    worst = std::max(worst, std::abs(p.alice - p.bob));
  }
  for (const auto& a : scan.alice_grid())
    for (const auto& b : scan.bob_grid()) {
      const Payoffs p = eval.payoffs(a, b);
      worst = std::max(worst, std::abs(p.alice - p.bob));
    }
  return Claim{"alice = bob for all sampled profiles", worst <= 1e-12,
               "max |alice - bob| " + fmt(worst) + " over " + std::to_string(samples) +
                   " random profiles and the full lattice"};
}

inline Claim max_payoff_claim(const GameConfig& config, const LatticeScan& scan, double expected) {
  const Evaluator eval(config);
  double best = -1e300;
  for (const auto& a : scan.alice_grid())
    for (const auto& b : scan.bob_grid()) best = std::max(best, eval.payoffs(a, b).alice);
  return Claim{"max payoff " + fmt(expected), near(best, expected, 1e-12), "lattice maximum " + fmt(best)};
}

inline closed_form::BareInitial bare_initial(CaseTag t) {
  switch (t) {
    case CaseTag::CaseBareFF: return closed_form::BareInitial::FF;
    case CaseTag::CaseBareBB: return closed_form::BareInitial::BB;
    case CaseTag::CaseBarePlus: return closed_form::BareInitial::Plus;
    case CaseTag::CaseBareIFF: return closed_form::BareInitial::IFF;
    default: return closed_form::BareInitial::FFI;
  }
}

inline Claim bare_closed_form_claim(const GameConfig& config, CaseTag tag, const LatticeScan& scan,
                                    std::uint64_t seed) {
  const Evaluator eval(config);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  const auto check = [&](const StrategyParams& a, const StrategyParams& b) {
    const Payoffs e = eval.payoffs(a, b);
    const Payoffs c = closed_form::payoff_bare(bare_initial(tag), a, b);
    worst = std::max({worst, std::abs(e.alice - c.alice), std::abs(e.bob - c.bob)});
  };
  for (std::size_t k = 0; k < 2000; ++k)
    check(random_strategy(config.alice_class, rng), random_strategy(config.bob_class, rng));
  for (const auto& a : scan.alice_grid())
    for (const auto& b : scan.bob_grid()) check(a, b);
  return Claim{"engine payoffs match the bare-protocol closed forms", worst <= 1e-12,
               "max deviation " + fmt(worst)};
}

// For |FF> under classical strategies the final state is
// (xy, -x sqrt(1-y^2), -sqrt(1-x^2) y, sqrt(1-x^2) sqrt(1-y^2)), and for |BB>
// it is (sqrt(1-x^2) sqrt(1-y^2), sqrt(1-x^2) y, x sqrt(1-y^2), xy), with
// x = cos(theta/2), y = cos(omega/2), and theta, omega in [0, 2pi).
inline StateVector4 classical_state(bool from_ff, double theta, double omega) {
  const double x = std::cos(theta / 2), y = std::cos(omega / 2);
  const double sx = std::sqrt(std::max(0.0, 1 - x * x)), sy = std::sqrt(std::max(0.0, 1 - y * y));
  if (from_ff) return StateVector4{{x * y, -x * sy, -sx * y, sx * sy}};
  return StateVector4{{sx * sy, sx * y, x * sy, x * y}};
}

inline Claim classical_state_claim(const GameConfig& config, bool from_ff, std::size_t steps) {
  double worst = 0.0;
  const GridSpec g = GridSpec::uniform(steps);
  for (const auto& a : enumerate_grid(StrategyClass::Classical1, g))
    for (const auto& b : enumerate_grid(StrategyClass::Classical1, g))
      worst = std::max(worst, max_abs_diff(evolve(config, a, b), classical_state(from_ff, a.theta, b.theta)));
  return Claim{"final states reduce to the classical closed forms", worst <= 1e-12,
               "max component error " + fmt(worst)};
}

inline Claim classical_matches_bare_claim(const GameConfig& config, std::size_t steps) {
  GameConfig bare = config;
  bare.protocol = Protocol::bare();
  const Evaluator e1(config), e2(bare);
  const GridSpec g = GridSpec::uniform(steps);
  double worst = 0.0;
  for (const auto& a : enumerate_grid(StrategyClass::Classical1, g))
    for (const auto& b : enumerate_grid(StrategyClass::Classical1, g)) {
      const Payoffs p = e1.payoffs(a, b), q = e2.payoffs(a, b);
      worst = std::max({worst, std::abs(p.alice - q.alice), std::abs(p.bob - q.bob)});
    }
  return Claim{"payoff function equals the unentangled protocol", worst <= 1e-12, "max deviation " + fmt(worst)};
}

struct ExtremaStats {
  double max_error = 0.0;       // lattice-of-candidates max vs 2 max(u+v, u-v)^2
  double min_error = 0.0;       // candidate min vs min((u+v)^2, (u-v)^2)
  double dense_excess = 0.0;    // largest escape of a dense (rho, sigma) sample from [min, max]
  double ratio_error = 0.0;     // at extremal candidates: alice = 2 bob or bob = 2 alice
  double dual_form_error = 0.0; // trigonometric expansion vs squared amplitudes
};

// Payoff extrema over (rho, sigma) in the unrestricted |BB> game, for
// (u, v) drawn from random angles.
inline ExtremaStats extrema_oracle(std::uint64_t seed, std::size_t samples, std::size_t dense = 64) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const std::array<double, 4> candidates{0.0, kPi / 2, kPi, 3 * kPi / 2};
  ExtremaStats s;
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = angle(rng), omega = angle(rng);
    const double u = std::cos(theta / 2) * std::cos(omega / 2);
    const double v = std::sin(theta / 2) * std::sin(omega / 2);
    const double hi = 2 * std::max((u + v) * (u + v), (u - v) * (u - v));
    const double lo = std::min((u + v) * (u + v), (u - v) * (u - v));
    double cmax = -1e300, cmin = 1e300;
    for (double rho : candidates)
      for (double sigma : candidates) {
        const double a = closed_form::payoff_3x3_bb(u, v, rho, sigma);
        cmax = std::max(cmax, a);
        cmin = std::min(cmin, a);
        s.dual_form_error =
            std::max(s.dual_form_error, std::abs(a - closed_form::payoffs_3x3_bb_squared(u, v, rho, sigma).alice));
      }
    for (double rho : candidates)
      for (double sigma : candidates) {
        const Payoffs sq = closed_form::payoffs_3x3_bb_squared(u, v, rho, sigma);
        if (std::abs(sq.alice - cmax) > 1e-12 && std::abs(sq.alice - cmin) > 1e-12) continue;
        s.ratio_error =
            std::max(s.ratio_error, std::min(std::abs(sq.alice - 2 * sq.bob), std::abs(sq.bob - 2 * sq.alice)));
      }
    s.max_error = std::max(s.max_error, std::abs(cmax - hi));
    s.min_error = std::max(s.min_error, std::abs(cmin - lo));
    for (std::size_t i = 0; i < dense; ++i)
      for (std::size_t j = 0; j < dense; ++j) {
        const double rho = axis_value(i, dense, false), sigma = axis_value(j, dense, false);
        const double a = closed_form::payoff_3x3_bb(u, v, rho, sigma);
        s.dense_excess = std::max({s.dense_excess, a - hi, lo - a});
        s.dual_form_error =
            std::max(s.dual_form_error, std::abs(a - closed_form::payoffs_3x3_bb_squared(u, v, rho, sigma).alice));
      }
  }
  return s;
}

inline std::string grid_text(const GridPair& g) {
  return std::to_string(g.alice.theta_steps) + "/" + std::to_string(g.bob.theta_steps) + " steps per axis";
}

}  // namespace cases_detail

inline CaseOutcome run_case(CaseTag tag, std::uint64_t seed = 0, const ScanOptions& options = {}) {
  using namespace cases_detail;
  const CaseBundle bundle = case_bundle(tag);
  const GameConfig& config = bundle.run.game;
  const bool from_ff = config.initial_state == named_state(NamedState::FF);

  const LatticeScan scan(config, bundle.run.grids, options);
  CaseOutcome out;
  RunReport& report = out.report;
  report.case_tag = std::string(to_string(tag));
  report.config = config;
  report.grids = bundle.run.grids;
  report.epsilon = bundle.run.epsilon;
  report.equilibria = nash_scan(scan, bundle.run.epsilon);
  const auto& eqs = report.equilibria;
  auto& claims = out.claims;

  switch (tag) {
    case CaseTag::Case3x3: {
      report.certificate = certify_no_equilibrium(scan);
      claims.push_back({"no lattice profile is an epsilon-Nash equilibrium", eqs.empty(),
                        std::to_string(eqs.size()) + " equilibria at epsilon " + fmt(bundle.run.epsilon)});
      claims.push_back({"deviation certificate min_best_gain >= " + fmt(kCertificate3x3Threshold),
                        report.certificate->min_best_gain >= kCertificate3x3Threshold,
                        "min_best_gain " + format_double(report.certificate->min_best_gain)});
      const auto ex = extrema_oracle(seed, 1000);
      claims.push_back({"payoff extrema over (rho,sigma) are 2(u+-v)^2 (max) and (u+-v)^2 (min)",
                        ex.max_error <= 1e-10 && ex.min_error <= 1e-10 && ex.dense_excess <= 1e-10,
                        "max error " + fmt(ex.max_error) + ", min error " + fmt(ex.min_error) +
                            ", dense-sample excess " + fmt(ex.dense_excess)});
      claims.push_back({"at the extremal points one payoff is twice the other", ex.ratio_error <= 1e-10,
                        "max ratio error " + fmt(ex.ratio_error)});
      claims.push_back({"trigonometric and squared payoff forms agree", ex.dual_form_error <= 1e-12,
                        "max difference " + fmt(ex.dual_form_error)});
      break;
    }
    case CaseTag::Case2x2FF:
    case CaseTag::Case2x2BB: {
      const Payoffs favoured = from_ff ? Payoffs{2, 1} : Payoffs{1, 2};
      claims.push_back(all_pay_claim(eqs, favoured.alice, favoured.bob, bundle.run.epsilon));
      const auto cls = StrategyClass::Phase2;
      const std::vector<NamedCheck> flips{{"flip-flip", flip_strategy(cls), flip_strategy(cls)}};
      const auto family = quarter_turn_family(from_ff);
      claims.push_back(named_profiles_claim("flip-flip is an equilibrium with payoffs (" + fmt(favoured.alice) +
                                                "," + fmt(favoured.bob) + ")",
                                            config, flips, kStepsPiOver32, favoured));
      claims.push_back(named_profiles_claim("|x|=|y|=sqrt2/2, |z|=1 family is an equilibrium with payoffs (" +
                                                fmt(favoured.alice) + "," + fmt(favoured.bob) + ")",
                                            config, family, kStepsPiOver32, favoured));
      std::vector<NamedCheck> all = flips;
      all.insert(all.end(), family.begin(), family.end());
      claims.push_back(
          named_profiles_claim("named equilibria survive a half-step deviation grid", config, all, kStepsPiOver64, favoured));
      const auto id = verify_epsilon_nash(
          config, make_profile(config, identity_strategy(cls), identity_strategy(cls)),
          GridPair{GridSpec::uniform(kStepsPiOver32), GridSpec::uniform(kStepsPiOver32)});
      claims.push_back({"identity-identity is not an equilibrium", id.verdict == Verdict::Refuted,
                        "best deviation gain " + fmt(id.best_deviation->gain) + " by " +
                            std::string(to_string(id.best_deviation->player))});
      break;
    }
    case CaseTag::Case2x1FF: {
      claims.push_back(all_pay_claim(eqs, 2, 1, bundle.run.epsilon));
      const double step = kTwoPi / static_cast<double>(bundle.run.grids.alice.theta_steps);
      std::size_t off_line = 0;
      for (const auto& e : eqs) {
        const double t = e.profile.alice.theta, w = e.profile.bob.theta;
        if (std::min(circular_distance(w, t), circular_distance(w, -t)) > step + 1e-12) ++off_line;
      }
      claims.push_back({"all equilibria lie on omega = +-theta (mod 2pi) within one grid step",
                        !eqs.empty() && off_line == 0, std::to_string(off_line) + " off-line points"});
      std::vector<NamedCheck> lines;
      for (int k = 0; k < 16; ++k) {
        const double t = k * kPi / 8;
        lines.push_back({"omega=theta", strat(t, kPi / 2, 0, StrategyClass::Phase2),
                         strat(t, 0, 0, StrategyClass::Classical1)});
        lines.push_back({"omega=-theta", strat(t, 3 * kPi / 2, 0, StrategyClass::Phase2),
                         strat(-t, 0, 0, StrategyClass::Classical1)});
      }
      claims.push_back(named_profiles_claim("points on omega = +-theta with |z| = 1 are equilibria paying (2,1)",
                                            config, lines, kStepsPiOver32, Payoffs{2, 1}));
      claims.push_back(named_profiles_claim("line equilibria survive a half-step deviation grid", config, lines,
                                            kStepsPiOver64, Payoffs{2, 1}));
      break;
    }
    case CaseTag::Case2x1BB: {
      std::size_t bob_fav = 0, alice_fav = 0, other = 0;
      std::vector<const EquilibriumReport*> alice_points;
      for (const auto& e : eqs) {
        if (pays(e.profile.payoffs, 1, 2, bundle.run.epsilon))
          ++bob_fav;
        else if (pays(e.profile.payoffs, 2, 1, bundle.run.epsilon)) {
          ++alice_fav;
          alice_points.push_back(&e);
        } else
          ++other;
      }
      claims.push_back({"every equilibrium pays (1,2) or (2,1)", !eqs.empty() && other == 0,
                        std::to_string(other) + " with other payoffs"});
      claims.push_back({"most equilibria favour Bob (1,2)", bob_fav > alice_fav && 2 * bob_fav > eqs.size(),
                        std::to_string(bob_fav) + " of " + std::to_string(eqs.size())});
      // Isolated: no (2,1) neighbour one step away in theta or omega at the same alpha.
      const double step = kTwoPi / static_cast<double>(bundle.run.grids.alice.theta_steps);
      std::size_t clustered = 0, off_axis = 0;
      for (const auto* p : alice_points) {
        if (pure_level(p->profile.alice.theta) != 1 || pure_level(p->profile.bob.theta) != 1) ++off_axis;
        for (const auto* q : alice_points) {
          if (p == q || p->profile.alice.alpha != q->profile.alice.alpha) continue;
          const double dt = circular_distance(p->profile.alice.theta, q->profile.alice.theta);
          const double dw = circular_distance(p->profile.bob.theta, q->profile.bob.theta);
          if (dt <= step + 1e-12 && dw <= step + 1e-12) ++clustered;
        }
      }
      claims.push_back({"isolated equilibria favouring Alice (2,1) exist at |x| = |y| = 1",
                        alice_fav > 0 && clustered == 0 && off_axis == 0,
                        std::to_string(alice_fav) + " points, " + std::to_string(clustered) +
                            " adjacent pairs, " + std::to_string(off_axis) + " away from x^2 = y^2 = 1"});
      std::vector<NamedCheck> alice_named{{"theta=omega=0,alpha=0", strat(0, 0, 0, StrategyClass::Phase2),
                                           strat(0, 0, 0, StrategyClass::Classical1)}};
      std::vector<NamedCheck> bob_named;
      for (int k = 0; k < 8; ++k)
        bob_named.push_back({"theta=omega=pi", strat(kPi, k * kPi / 4, 0, StrategyClass::Phase2),
                             strat(kPi, 0, 0, StrategyClass::Classical1)});
      claims.push_back(named_profiles_claim("x = y = 1 with z = 0 is an equilibrium paying (2,1)", config,
                                            alice_named, kStepsPiOver32, Payoffs{2, 1}));
      claims.push_back(named_profiles_claim("u = 0 (theta = omega = pi, alpha free) is an equilibrium paying (1,2)",
                                            config, bob_named, kStepsPiOver32, Payoffs{1, 2}));
      break;
    }
    case CaseTag::CaseClassicalFF:
    case CaseTag::CaseClassicalBB: {
      claims.push_back(classical_state_claim(config, from_ff, 32));
      claims.push_back(classical_matches_bare_claim(config, bundle.run.grids.alice.theta_steps));
      claims.push_back(pure_equilibria_claim(eqs));
      const auto mixed = from_ff ? mixed_equilibrium_claims(config, 1.0 / 3.0, 2.0 / 3.0, kStepsPiOver64)
                                 : mixed_equilibrium_claims(config, 2.0 / 3.0, 1.0 / 3.0, kStepsPiOver64);
      claims.insert(claims.end(), mixed.begin(), mixed.end());
      break;
    }
    case CaseTag::CaseBareBB:
    case CaseTag::CaseBareFF: {
      claims.push_back(bare_closed_form_claim(config, tag, scan, seed));
      claims.push_back(pure_equilibria_claim(eqs));
      const auto mixed = from_ff ? mixed_equilibrium_claims(config, 1.0 / 3.0, 2.0 / 3.0, kStepsPiOver4)
                                 : mixed_equilibrium_claims(config, 2.0 / 3.0, 1.0 / 3.0, kStepsPiOver4);
      claims.insert(claims.end(), mixed.begin(), mixed.end());
      break;
    }
    case CaseTag::CaseBarePlus:
    case CaseTag::CaseBareIFF:
    case CaseTag::CaseBareFFI: {
      claims.push_back(equal_payoffs_claim(config, scan, seed, 10000));
      claims.push_back(max_payoff_claim(config, scan, 1.5));
      claims.push_back(all_pay_claim(eqs, 1.5, 1.5, 1e-9));
      const std::vector<NamedCheck> id{
          {"identity-identity", identity_strategy(), identity_strategy()}};
      claims.push_back(named_profiles_claim("identity-identity is an equilibrium paying (3/2,3/2)", config, id,
                                            kStepsPiOver4, Payoffs{1.5, 1.5}));
      report.certificate = certify_no_equilibrium(scan);
      claims.push_back({"deviation certificate is zero (equilibria on the lattice)",
                        std::abs(report.certificate->min_best_gain) <= 1e-12,
                        "min_best_gain " + format_double(report.certificate->min_best_gain)});
      claims.push_back(bare_closed_form_claim(config, tag, scan, seed));
      break;
    }
  }
  claims.push_back(invariants_claim(config, eqs, seed));

  const auto passed = std::count_if(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
  std::ostringstream summary;
  summary << report.case_tag << ": " << eqs.size() << " equilibria at epsilon " << fmt(report.epsilon) << " on "
          << grid_text(report.grids);
  if (report.certificate) summary << ", min best gain " << fmt(report.certificate->min_best_gain);
  summary << "; " << passed << "/" << claims.size() << " claims pass";
  report.summary = summary.str();
  return out;
}

}  // namespace qbos
