// closed_form.hpp
// Analytic expressions for the maximally entangled (gamma = pi/2) and bare
// protocols under the battle-of-the-sexes table. These are transcriptions,
// kept independent of the matrix engine so each can check the other.
//
// Notation: Alice plays (theta, alpha, beta), Bob plays (omega, gamma, delta).

#pragma once

#include <cmath>
#include <stdexcept>

#include "qbos/engine.hpp"
#include "qbos/linalg.hpp"
#include "qbos/strategy.hpp"

namespace qbos::closed_form {

struct UVZW {
  double u = 0.0;  // cos(theta/2) cos(omega/2)
  double v = 0.0;  // sin(theta/2) sin(omega/2)
  double z = 0.0;  // sin(alpha + gamma)
  double w = 0.0;  // sin(beta + delta)
};

inline UVZW uvzw(const StrategyParams& alice, const StrategyParams& bob) {
  return UVZW{std::cos(alice.theta / 2) * std::cos(bob.theta / 2),
              std::sin(alice.theta / 2) * std::sin(bob.theta / 2), std::sin(alice.alpha + bob.alpha),
              std::sin(alice.beta + bob.beta)};
}

// Final state J^dagger (U_A (x) U_B) J |FF>; all components are real.
inline StateVector4 final_state_ff_angles(double theta, double alpha, double beta, double omega, double gamma,
                                          double delta) {
  const double ct = std::cos(theta / 2), st = std::sin(theta / 2);
  const double co = std::cos(omega / 2), so = std::sin(omega / 2);
  StateVector4 s;
  s[kFF] = ct * co * std::cos(alpha + gamma) - st * so * std::sin(beta + delta);
  s[kFB] = st * co * std::sin(-beta + gamma) - ct * so * std::cos(alpha - delta);
  s[kBF] = -st * co * std::cos(-beta + gamma) + ct * so * std::sin(alpha - delta);
  s[kBB] = ct * co * std::sin(alpha + gamma) + st * so * std::cos(beta + delta);
  return s;
}

// Final state J^dagger (U_A (x) U_B) J |BB>; all components are real.
inline StateVector4 final_state_bb_angles(double theta, double alpha, double beta, double omega, double gamma,
                                          double delta) {
  const double ct = std::cos(theta / 2), st = std::sin(theta / 2);
  const double co = std::cos(omega / 2), so = std::sin(omega / 2);
  StateVector4 s;
  s[kFF] = -ct * co * std::sin(alpha + gamma) + st * so * std::cos(beta + delta);
  s[kFB] = st * co * std::cos(-beta + gamma) + ct * so * std::sin(alpha - delta);
  s[kBF] = st * co * std::sin(-beta + gamma) + ct * so * std::cos(alpha - delta);
  s[kBB] = ct * co * std::cos(alpha + gamma) + st * so * std::sin(beta + delta);
  return s;
}

inline StateVector4 final_state_ff(const StrategyParams& a, const StrategyParams& b) {
  return final_state_ff_angles(a.theta, a.alpha, a.beta, b.theta, b.alpha, b.beta);
}
inline StateVector4 final_state_bb(const StrategyParams& a, const StrategyParams& b) {
  return final_state_bb_angles(a.theta, a.alpha, a.beta, b.theta, b.alpha, b.beta);
}

// Phase-restricted (beta = delta = 0), initial |FF>, on the branch
// cos(alpha + gamma) >= 0.
inline Payoffs payoff_2x2_ff(double u, double v, double z) {
  const double s = u * z + v;
  return Payoffs{u * u * (1 - z * z) + 2 * s * s, 2 * u * u * (1 - z * z) + s * s};
}

// Same payoffs as payoff_2x2_ff, written as polynomials in z.
inline Payoffs payoff_2x2_ff_expanded(double u, double v, double z) {
  return Payoffs{u * u * z * z + 4 * v * u * z + (u * u + 2 * v * v),
                 -u * u * z * z + 2 * v * u * z + 2 * u * u + v * v};
}

// Alice's payoff from |BB> in the unrestricted case, with z = sin(rho),
// w = sin(sigma), in its trigonometric expansion.
inline double payoff_3x3_bb(double u, double v, double rho, double sigma) {
  return 1.5 * u * u + 0.5 * u * u * std::cos(2 * rho) + u * v * std::sin(rho + sigma) -
         3 * u * v * std::sin(rho - sigma) - 0.5 * v * v * std::cos(2 * sigma) + 1.5 * v * v;
}

// Both payoffs from |BB> as squared amplitudes:
// first = -u sin(rho) + v cos(sigma), last = u cos(rho) + v sin(sigma).
inline Payoffs payoffs_3x3_bb_squared(double u, double v, double rho, double sigma) {
  const double first = -u * std::sin(rho) + v * std::cos(sigma);
  const double last = u * std::cos(rho) + v * std::sin(sigma);
  return Payoffs{first * first + 2 * last * last, 2 * first * first + last * last};
}

enum class BareInitial { FF, BB, Plus, IFF, FFI };

// Bare-protocol payoffs for U_A = [[a,b],[-b*,a*]], U_B = [[c,d],[-d*,c*]].
inline Payoffs payoff_bare(BareInitial initial, Complex a, Complex b, Complex c, Complex d) {
  constexpr double tol = 1e-12;
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol || std::abs(std::norm(c) + std::norm(d) - 1.0) > tol)
    throw std::invalid_argument("payoff_bare: |a|^2+|b|^2 and |c|^2+|d|^2 must equal 1");
  const double xx = std::norm(a) * std::norm(c);  // x^2 y^2
  const double ss = std::norm(b) * std::norm(d);  // (1-x^2)(1-y^2)
  switch (initial) {
    case BareInitial::BB: return Payoffs{ss + 2 * xx, 2 * ss + xx};
    case BareInitial::FF: return Payoffs{2 * ss + xx, ss + 2 * xx};
    case BareInitial::Plus: {
      const double p = 1.5 * std::norm(a * c + b * d);
      return Payoffs{p, p};
    }
    case BareInitial::IFF: {
      const double p = 1.5 * std::norm(kI * a * c + b * d);
      return Payoffs{p, p};
    }
    case BareInitial::FFI: {
      const double p = 1.5 * std::norm(a * c + kI * b * d);
      return Payoffs{p, p};
    }
  }
  throw std::logic_error("payoff_bare: bad enum");
}

inline Payoffs payoff_bare(BareInitial initial, const StrategyParams& alice, const StrategyParams& bob) {
  const Matrix2 ua = to_unitary(alice);
  const Matrix2 ub = to_unitary(bob);
  return payoff_bare(initial, ua(0, 0), ua(0, 1), ub(0, 0), ub(0, 1));
}

}  // namespace qbos::closed_form
