// strategy.hpp
// Per-player unitary strategy families and finite grids over them.
//
// A strategy is U(theta, alpha, beta) =
//   [[ e^{i alpha} cos(theta/2),  e^{i beta} sin(theta/2) ],
//    [-e^{-i beta} sin(theta/2),  e^{-i alpha} cos(theta/2)]]
// Bob's angles (omega, gamma, delta) use the same fields.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "qbos/linalg.hpp"

namespace qbos {

enum class StrategyClass {
  Full3,       // theta, alpha, beta
  Phase2,      // beta = 0
  Classical1,  // alpha = beta = 0 (real rotations)
};

inline std::string_view to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::Full3: return "full3";
    case StrategyClass::Phase2: return "phase2";
    case StrategyClass::Classical1: return "classical1";
  }
  return "?";
}

inline StrategyClass parse_strategy_class(std::string_view s) {
  if (s == "full3" || s == "Full3") return StrategyClass::Full3;
  if (s == "phase2" || s == "Phase2") return StrategyClass::Phase2;
  if (s == "classical1" || s == "Classical1") return StrategyClass::Classical1;
  throw std::invalid_argument("unknown strategy class '" + std::string(s) +
                              "' (expected full3, phase2 or classical1)");
}

inline bool alpha_free(StrategyClass c) { return c != StrategyClass::Classical1; }
inline bool beta_free(StrategyClass c) { return c == StrategyClass::Full3; }

struct StrategyParams {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  StrategyClass cls = StrategyClass::Full3;

  auto key() const { return std::tie(theta, alpha, beta); }

  friend bool operator==(const StrategyParams&, const StrategyParams&) = default;
};

// Lexicographic on (theta, alpha, beta).
inline bool lex_less(const StrategyParams& a, const StrategyParams& b) { return a.key() < b.key(); }

inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

inline StrategyParams canonicalize(const StrategyParams& p) {
  if (!std::isfinite(p.theta) || !std::isfinite(p.alpha) || !std::isfinite(p.beta))
    throw std::invalid_argument("canonicalize: non-finite strategy angle");
  StrategyParams out = p;
  out.theta = wrap_angle(p.theta);
  out.alpha = alpha_free(p.cls) ? wrap_angle(p.alpha) : 0.0;
  out.beta = beta_free(p.cls) ? wrap_angle(p.beta) : 0.0;
  return out;
}

inline Matrix2 to_unitary(const StrategyParams& p) {
  const double c = std::cos(p.theta / 2.0);
  const double s = std::sin(p.theta / 2.0);
  const Complex ea = std::polar(1.0, p.alpha);
  const Complex eb = std::polar(1.0, p.beta);
  Matrix2 u;
  u(0, 0) = ea * c;
  u(0, 1) = eb * s;
  u(1, 0) = -std::conj(eb) * s;
  u(1, 1) = std::conj(ea) * c;
  return u;
}

// Step counts per axis. With inclusive_endpoints the lattice is
// k * 2pi / n for k in [0, n), so it contains 0 and the period end 2pi is
// identified with 0. Otherwise points are cell-centred: (k + 1/2) * 2pi / n.
struct GridSpec {
  std::size_t theta_steps = 16;
  std::size_t alpha_steps = 16;
  std::size_t beta_steps = 16;
  bool inclusive_endpoints = true;

  // Convenience: all axes with the same step 2pi / n.
  static GridSpec uniform(std::size_t n) { return GridSpec{n, n, n, true}; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct GridPair {
  GridSpec alice;
  GridSpec bob;

  friend bool operator==(const GridPair&, const GridPair&) = default;
};

inline std::size_t effective_alpha_steps(StrategyClass c, const GridSpec& g) {
  return alpha_free(c) ? g.alpha_steps : 1;
}
inline std::size_t effective_beta_steps(StrategyClass c, const GridSpec& g) {
  return beta_free(c) ? g.beta_steps : 1;
}

inline void validate_grid(StrategyClass c, const GridSpec& g) {
  if (g.theta_steps < 2) throw std::invalid_argument("grid: theta_steps must be >= 2");
  if (alpha_free(c) && g.alpha_steps < 2)
    throw std::invalid_argument("grid: alpha_steps must be >= 2 for " + std::string(to_string(c)));
  if (beta_free(c) && g.beta_steps < 2)
    throw std::invalid_argument("grid: beta_steps must be >= 2 for " + std::string(to_string(c)));
}

inline std::size_t grid_size(StrategyClass c, const GridSpec& g) {
  return g.theta_steps * effective_alpha_steps(c, g) * effective_beta_steps(c, g);
}

// Lattice value for index k of an n-step axis; computed from the integer
// index, never by accumulation.
inline double axis_value(std::size_t k, std::size_t n, bool inclusive) {
  const double offset = inclusive ? 0.0 : 0.5;
  return (static_cast<double>(k) + offset) * kTwoPi / static_cast<double>(n);
}

inline std::vector<StrategyParams> enumerate_grid(StrategyClass c, const GridSpec& g) {
  validate_grid(c, g);
  const std::size_t na = effective_alpha_steps(c, g);
  const std::size_t nb = effective_beta_steps(c, g);
  std::vector<StrategyParams> out;
  out.reserve(g.theta_steps * na * nb);
  for (std::size_t i = 0; i < g.theta_steps; ++i) {
    const double theta = axis_value(i, g.theta_steps, g.inclusive_endpoints);
    for (std::size_t j = 0; j < na; ++j) {
      const double alpha = alpha_free(c) ? axis_value(j, na, g.inclusive_endpoints) : 0.0;
      for (std::size_t k = 0; k < nb; ++k) {
        const double beta = beta_free(c) ? axis_value(k, nb, g.inclusive_endpoints) : 0.0;
        out.push_back(StrategyParams{theta, alpha, beta, c});
      }
    }
  }
  return out;
}

// Named operators.
inline StrategyParams identity_strategy(StrategyClass c = StrategyClass::Full3) {
  return StrategyParams{0.0, 0.0, 0.0, c};
}
inline StrategyParams flip_strategy(StrategyClass c = StrategyClass::Full3) {
  return StrategyParams{kPi, 0.0, 0.0, c};
}

}  // namespace qbos
