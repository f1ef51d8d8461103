// engine.hpp
// The quantization protocol: |E_f> = J^dagger (U_A (x) U_B) J |E_i>, or the
// bare variant (U_A (x) U_B)|E_i> without the entangling conjugation.
// Measurement is in the {FF, FB, BF, BB} basis and payoffs are exact
// expectations against a bimatrix table.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qbos/linalg.hpp"
#include "qbos/strategy.hpp"

namespace qbos {

enum Outcome : std::size_t { kFF = 0, kFB = 1, kBF = 2, kBB = 3 };

struct Payoffs {
  double alice = 0.0;
  double bob = 0.0;

  friend bool operator==(const Payoffs&, const Payoffs&) = default;
};

struct PayoffTable {
  // Indexed by Outcome.
  std::array<Payoffs, 4> entries{};

  // FF -> (1,2), FB -> (0,0), BF -> (0,0), BB -> (2,1)
  static PayoffTable battle_of_the_sexes() {
    return PayoffTable{{Payoffs{1.0, 2.0}, Payoffs{0.0, 0.0}, Payoffs{0.0, 0.0}, Payoffs{2.0, 1.0}}};
  }

  bool is_finite() const {
    for (const auto& e : entries)
      if (!std::isfinite(e.alice) || !std::isfinite(e.bob)) return false;
    return true;
  }

  friend bool operator==(const PayoffTable&, const PayoffTable&) = default;
};

struct Protocol {
  enum class Kind { Eisert, Bare };

  Kind kind = Kind::Eisert;
  double gamma = kPi / 2.0;  // ignored for Bare

  static Protocol eisert(double gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0 || gamma > kPi / 2.0 + 1e-15)
      throw std::invalid_argument("Eisert protocol: gamma must lie in [0, pi/2]");
    return Protocol{Kind::Eisert, gamma};
  }
  static Protocol bare() { return Protocol{Kind::Bare, 0.0}; }

  friend bool operator==(const Protocol&, const Protocol&) = default;
};

// Named initial states.
enum class NamedState { FF, FB, BF, BB, Plus, IFF, FFI };

inline std::string_view to_string(NamedState s) {
  switch (s) {
    case NamedState::FF: return "FF";
    case NamedState::FB: return "FB";
    case NamedState::BF: return "BF";
    case NamedState::BB: return "BB";
    case NamedState::Plus: return "PLUS";
    case NamedState::IFF: return "IFF";
    case NamedState::FFI: return "FFI";
  }
  return "?";
}

inline std::optional<NamedState> parse_named_state(std::string_view s) {
  for (auto n : {NamedState::FF, NamedState::FB, NamedState::BF, NamedState::BB, NamedState::Plus,
                 NamedState::IFF, NamedState::FFI})
    if (s == to_string(n)) return n;
  return std::nullopt;
}

inline StateVector4 named_state(NamedState s) {
  switch (s) {
    case NamedState::FF: return StateVector4::basis(kFF);
    case NamedState::FB: return StateVector4::basis(kFB);
    case NamedState::BF: return StateVector4::basis(kBF);
    case NamedState::BB: return StateVector4::basis(kBB);
    case NamedState::Plus: return StateVector4{{kHalfSqrt2, 0.0, 0.0, kHalfSqrt2}};
    case NamedState::IFF: return StateVector4{{kHalfSqrt2 * kI, 0.0, 0.0, kHalfSqrt2}};
    case NamedState::FFI: return StateVector4{{kHalfSqrt2, 0.0, 0.0, kHalfSqrt2 * kI}};
  }
  throw std::logic_error("named_state: bad enum");
}

struct GameConfig {
  Protocol protocol = Protocol::eisert(kPi / 2.0);
  StateVector4 initial_state = StateVector4::basis(kFF);
  PayoffTable payoffs = PayoffTable::battle_of_the_sexes();
  StrategyClass alice_class = StrategyClass::Full3;
  StrategyClass bob_class = StrategyClass::Full3;

  void validate() const {
    if (!initial_state.is_finite() || !initial_state.is_normalized())
      throw std::invalid_argument("game config: initial state must be normalized");
    if (!payoffs.is_finite()) throw std::invalid_argument("game config: non-finite payoff entry");
    if (protocol.kind == Protocol::Kind::Eisert) (void)Protocol::eisert(protocol.gamma);
  }

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

// C (x) C with C = [[0,1],[-1,0]].
inline Matrix4 flip_flip() {
  Matrix2 c;
  c(0, 1) = 1.0;
  c(1, 0) = -1.0;
  return kron(c, c);
}

// J(gamma) = exp(i gamma/2 C(x)C) = cos(gamma/2) I + i sin(gamma/2) C(x)C,
// since (C(x)C)^2 = I.
inline Matrix4 entangler(double gamma) {
  const Matrix4 cc = flip_flip();
  const double c = std::cos(gamma / 2.0);
  const double s = std::sin(gamma / 2.0);
  Matrix4 j;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 4; ++k) j(r, k) = (r == k ? c : 0.0) + kI * s * cc(r, k);
  return j;
}

inline void check_strategy(const StrategyParams& p, StrategyClass expected, const char* who) {
  if (p.cls != expected)
    throw std::invalid_argument(std::string("evolve: ") + who + " strategy class " +
                                std::string(to_string(p.cls)) + " does not match configured " +
                                std::string(to_string(expected)));
  if ((!alpha_free(p.cls) && p.alpha != 0.0) || (!beta_free(p.cls) && p.beta != 0.0))
    throw std::invalid_argument(std::string("evolve: ") + who +
                                " strategy sets an angle its class fixes to zero");
}

inline StateVector4 evolve(const GameConfig& config, const StrategyParams& alice, const StrategyParams& bob) {
  check_strategy(alice, config.alice_class, "alice");
  check_strategy(bob, config.bob_class, "bob");
  const Matrix4 local = kron(to_unitary(alice), to_unitary(bob));
  if (config.protocol.kind == Protocol::Kind::Bare) return apply(local, config.initial_state);
  const Matrix4 j = entangler(config.protocol.gamma);
  return apply(dagger(j), apply(local, apply(j, config.initial_state)));
}

inline std::array<double, 4> outcome_probs(const StateVector4& state) {
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = std::norm(state[k]);
  return p;
}

inline Payoffs expected_payoffs(const StateVector4& state, const PayoffTable& table) {
  const auto p = outcome_probs(state);
  Payoffs out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.alice += p[k] * table.entries[k].alice;
    out.bob += p[k] * table.entries[k].bob;
  }
  return out;
}

// Repeated payoff evaluation for one configuration. J|E_i> and J^dagger are
// computed once; each call then costs one local product and one 4x4 apply.
class Evaluator {
 public:
  explicit Evaluator(const GameConfig& config) : config_(config) {
    config_.validate();
    if (config_.protocol.kind == Protocol::Kind::Eisert) {
      const Matrix4 j = entangler(config_.protocol.gamma);
      prepared_ = apply(j, config_.initial_state);
      unentangle_ = dagger(j);
    } else {
      prepared_ = config_.initial_state;
    }
  }

  const GameConfig& config() const { return config_; }

  StateVector4 state(const Matrix2& ua, const Matrix2& ub) const {
    // (U_A (x) U_B) g, reading g as the 2x2 array g[2j+l].
    StateVector4 w;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) {
        Complex acc{};
        for (std::size_t j = 0; j < 2; ++j) {
          const Complex inner = ub(k, 0) * prepared_[2 * j] + ub(k, 1) * prepared_[2 * j + 1];
          acc += ua(i, j) * inner;
        }
        w[2 * i + k] = acc;
      }
    if (unentangle_) return apply(*unentangle_, w);
    return w;
  }

  Payoffs payoffs(const Matrix2& ua, const Matrix2& ub) const {
    return expected_payoffs(state(ua, ub), config_.payoffs);
  }

  Payoffs payoffs(const StrategyParams& alice, const StrategyParams& bob) const {
    check_strategy(alice, config_.alice_class, "alice");
    check_strategy(bob, config_.bob_class, "bob");
    return payoffs(to_unitary(alice), to_unitary(bob));
  }

 private:
  GameConfig config_;
  StateVector4 prepared_;
  std::optional<Matrix4> unentangle_;
};

}  // namespace qbos
