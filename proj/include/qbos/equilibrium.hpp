// equilibrium.hpp
// epsilon-Nash verification, best responses, exhaustive lattice scans and
// non-existence certificates over discretized strategy spaces.
//
// Deviations are always checked against a finite grid, so a Verified verdict
// means "no grid deviation gains more than epsilon", nothing stronger.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qbos/engine.hpp"
#include "qbos/strategy.hpp"

namespace qbos {

inline constexpr double kAnalyticEpsilon = 1e-9;
inline constexpr double kScanEpsilon = 1e-6;
inline constexpr double kEvaluationCap = 1e8;

enum class Player { Alice, Bob };

inline std::string_view to_string(Player p) { return p == Player::Alice ? "A" : "B"; }

struct Profile {
  StrategyParams alice;
  StrategyParams bob;
  Payoffs payoffs;

  friend bool operator==(const Profile&, const Profile&) = default;
};

inline Profile make_profile(const GameConfig& config, const StrategyParams& alice, const StrategyParams& bob) {
  return Profile{alice, bob, Evaluator(config).payoffs(alice, bob)};
}

struct Deviation {
  Player player = Player::Alice;
  StrategyParams params;
  double gain = 0.0;

  friend bool operator==(const Deviation&, const Deviation&) = default;
};

enum class Verdict { Verified, Refuted };

inline std::string_view to_string(Verdict v) { return v == Verdict::Verified ? "verified" : "refuted"; }

struct EquilibriumReport {
  Profile profile;
  double epsilon = kAnalyticEpsilon;
  Verdict verdict = Verdict::Refuted;
  // Largest unilateral gain found; present whenever deviations were checked.
  std::optional<Deviation> best_deviation;

  friend bool operator==(const EquilibriumReport&, const EquilibriumReport&) = default;
};

struct DeviationCertificate {
  GridPair grids;
  double min_best_gain = 0.0;
  // First lattice profile attaining min_best_gain.
  Profile witness;

  friend bool operator==(const DeviationCertificate&, const DeviationCertificate&) = default;
};

class ResourceCapError : public std::runtime_error {
 public:
  ResourceCapError(double required, double cap)
      : std::runtime_error("scan needs " + std::to_string(static_cast<long long>(required)) +
                           " payoff evaluations, above the cap of " +
                           std::to_string(static_cast<long long>(cap)) + "; coarsen the grid or override the cap"),
        required_(required) {}

  double required() const { return required_; }

 private:
  double required_;
};

struct ScanOptions {
  bool override_cap = false;
  double evaluation_cap = kEvaluationCap;
  unsigned threads = 0;  // 0: hardware concurrency
};

inline std::pair<StrategyParams, double> best_response(const GameConfig& config, Player player,
                                                       const StrategyParams& opponent, const GridSpec& grid) {
  const StrategyClass cls = player == Player::Alice ? config.alice_class : config.bob_class;
  const auto candidates = enumerate_grid(cls, grid);
  if (candidates.empty()) throw std::invalid_argument("best_response: empty grid");
  const Evaluator eval(config);
  check_strategy(opponent, player == Player::Alice ? config.bob_class : config.alice_class, "opponent");
  const Matrix2 uo = to_unitary(opponent);

  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const Matrix2 uc = to_unitary(candidates[k]);
    const double value =
        player == Player::Alice ? eval.payoffs(uc, uo).alice : eval.payoffs(uo, uc).bob;
    // Strict comparison keeps the lexicographically smallest maximizer.
    if (value > best_value) {
      best_value = value;
      best = k;
    }
  }
  return {candidates[best], best_value};
}

inline EquilibriumReport verify_epsilon_nash(const GameConfig& config, const Profile& profile, const GridPair& grids,
                                             double epsilon = kAnalyticEpsilon) {
  const Evaluator eval(config);
  EquilibriumReport report;
  report.profile = profile;
  report.profile.payoffs = eval.payoffs(profile.alice, profile.bob);
  report.epsilon = epsilon;

  const auto [alice_dev, alice_best] = best_response(config, Player::Alice, profile.bob, grids.alice);
  const auto [bob_dev, bob_best] = best_response(config, Player::Bob, profile.alice, grids.bob);
  const double gain_a = alice_best - report.profile.payoffs.alice;
  const double gain_b = bob_best - report.profile.payoffs.bob;

  report.best_deviation = gain_a >= gain_b ? Deviation{Player::Alice, alice_dev, gain_a}
                                           : Deviation{Player::Bob, bob_dev, gain_b};
  report.verdict = report.best_deviation->gain > epsilon ? Verdict::Refuted : Verdict::Verified;
  return report;
}

inline double scan_evaluations(const GameConfig& config, const GridPair& grids) {
  // Two full passes over the profile lattice.
  return 2.0 * static_cast<double>(grid_size(config.alice_class, grids.alice)) *
         static_cast<double>(grid_size(config.bob_class, grids.bob));
}

namespace detail {

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

// Runs fn(chunk, begin, end) over contiguous chunks of [0, n).
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t chunks, Fn&& fn) {
  if (chunks <= 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    workers.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace detail

// The profile lattice G_A x G_B with, for every profile, the best unilateral
// deviation available on the same lattice. Construction evaluates all
// |G_A||G_B| payoffs once to find each column's best Alice reply and each
// row's best Bob reply; for_each_gain() re-evaluates to hand out gains.
// Total cost 2|G_A||G_B| evaluations instead of |G_A||G_B|(|G_A|+|G_B|).
class LatticeScan {
 public:
  LatticeScan(const GameConfig& config, const GridPair& grids, const ScanOptions& options = {})
      : eval_(config), grids_(grids) {
    validate_grid(config.alice_class, grids.alice);
    validate_grid(config.bob_class, grids.bob);
    const double needed = scan_evaluations(config, grids);
    if (!options.override_cap && needed > options.evaluation_cap)
      throw ResourceCapError(needed, options.evaluation_cap);

    alice_ = enumerate_grid(config.alice_class, grids.alice);
    bob_ = enumerate_grid(config.bob_class, grids.bob);
    for (const auto& p : alice_) ua_.push_back(to_unitary(p));
    for (const auto& p : bob_) ub_.push_back(to_unitary(p));

    const unsigned hw = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    chunks_ = std::min<std::size_t>(hw, alice_.size());

    best_alice_reply_.assign(bob_.size(), detail::Best{});
    best_bob_reply_.assign(alice_.size(), detail::Best{});
    std::vector<std::vector<detail::Best>> local(chunks_, std::vector<detail::Best>(bob_.size()));
    detail::parallel_chunks(alice_.size(), chunks_, [&](std::size_t c, std::size_t begin, std::size_t end) {
      auto& cols = local[c];
      for (std::size_t i = begin; i < end; ++i) {
        detail::Best row;
        for (std::size_t j = 0; j < bob_.size(); ++j) {
          const Payoffs p = eval_.payoffs(ua_[i], ub_[j]);
          if (p.alice > cols[j].value) cols[j] = {p.alice, i};
          if (p.bob > row.value) row = {p.bob, j};
        }
        best_bob_reply_[i] = row;
      }
    });
    // Chunks cover increasing index ranges; strict > keeps the smallest index.
    for (const auto& cols : local)
      for (std::size_t j = 0; j < bob_.size(); ++j)
        if (cols[j].value > best_alice_reply_[j].value) best_alice_reply_[j] = cols[j];
  }

  const std::vector<StrategyParams>& alice_grid() const { return alice_; }
  const std::vector<StrategyParams>& bob_grid() const { return bob_; }
  const GridPair& grids() const { return grids_; }

  const StrategyParams& alice_reply(std::size_t j) const { return alice_[best_alice_reply_[j].index]; }
  const StrategyParams& bob_reply(std::size_t i) const { return bob_[best_bob_reply_[i].index]; }

  // fn(acc, i, j, payoffs, gain_alice, gain_bob) over the lattice in
  // lexicographic profile order; returns one accumulator per chunk, in order.
  template <class Acc, class Fn>
  std::vector<Acc> for_each_gain(Fn fn) const {
    std::vector<Acc> accs(chunks_);
    detail::parallel_chunks(alice_.size(), chunks_, [&](std::size_t c, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = 0; j < bob_.size(); ++j) {
          const Payoffs p = eval_.payoffs(ua_[i], ub_[j]);
          fn(accs[c], i, j, p, best_alice_reply_[j].value - p.alice, best_bob_reply_[i].value - p.bob);
        }
    });
    return accs;
  }

  EquilibriumReport report(std::size_t i, std::size_t j, const Payoffs& p, double gain_a, double gain_b,
                           double epsilon) const {
    EquilibriumReport r;
    r.profile = Profile{alice_[i], bob_[j], p};
    r.epsilon = epsilon;
    r.best_deviation = gain_a >= gain_b ? Deviation{Player::Alice, alice_reply(j), gain_a}
                                        : Deviation{Player::Bob, bob_reply(i), gain_b};
    r.verdict = r.best_deviation->gain > epsilon ? Verdict::Refuted : Verdict::Verified;
    return r;
  }

 private:
  Evaluator eval_;
  GridPair grids_;
  std::vector<StrategyParams> alice_, bob_;
  std::vector<Matrix2> ua_, ub_;
  std::vector<detail::Best> best_alice_reply_;  // per Bob index
  std::vector<detail::Best> best_bob_reply_;    // per Alice index
  std::size_t chunks_ = 1;
};

// All lattice profiles that are epsilon-Nash against lattice deviations, in
// lexicographic (alice, bob) order.
inline std::vector<EquilibriumReport> nash_scan(const LatticeScan& scan, double epsilon = kScanEpsilon) {
  using Found = std::vector<EquilibriumReport>;
  const auto parts = scan.for_each_gain<Found>(
      [&](Found& acc, std::size_t i, std::size_t j, const Payoffs& p, double ga, double gb) {
        if (ga <= epsilon && gb <= epsilon) acc.push_back(scan.report(i, j, p, ga, gb, epsilon));
      });
  Found out;
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

inline std::vector<EquilibriumReport> nash_scan(const GameConfig& config, const GridPair& grids,
                                                double epsilon = kScanEpsilon, const ScanOptions& options = {}) {
  return nash_scan(LatticeScan(config, grids, options), epsilon);
}

// min over lattice profiles of max(gain_alice, gain_bob). A positive value
// means no lattice profile is epsilon-Nash for any epsilon below it.
inline DeviationCertificate certify_no_equilibrium(const LatticeScan& scan) {
  struct Min {
    double value = std::numeric_limits<double>::infinity();
    std::size_t i = 0, j = 0;
    Payoffs p;
  };
  const auto parts = scan.for_each_gain<Min>(
      [](Min& acc, std::size_t i, std::size_t j, const Payoffs& p, double ga, double gb) {
        const double g = std::max(ga, gb);
        if (g < acc.value) acc = Min{g, i, j, p};
      });
  Min best;
  for (const auto& part : parts)
    if (part.value < best.value) best = part;
  return DeviationCertificate{scan.grids(), best.value,
                              Profile{scan.alice_grid()[best.i], scan.bob_grid()[best.j], best.p}};
}

inline DeviationCertificate certify_no_equilibrium(const GameConfig& config, const GridPair& grids,
                                                   const ScanOptions& options = {}) {
  return certify_no_equilibrium(LatticeScan(config, grids, options));
}

}  // namespace qbos
