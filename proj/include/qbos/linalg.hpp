// linalg.hpp
// Fixed-size complex linear algebra for two-qubit games: 2x2 single-qubit
// operators, 4x4 two-qubit operators and 4-component state vectors.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace qbos {

using Complex = std::complex<double>;

inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kNormTol = 1e-12;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

inline constexpr Complex kI{0.0, 1.0};

// Square complex matrix of fixed dimension N, row-major.
template <std::size_t N>
struct Matrix {
  std::array<std::array<Complex, N>, N> entries{};

  static constexpr std::size_t size() { return N; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m.entries[i][i] = 1.0;
    return m;
  }

  static Matrix zero() { return Matrix{}; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries[r][c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries[r][c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a.entries[i][k];
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) out.entries[i][j] += aik * b.entries[k][j];
      }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) a.entries[i][j] += b.entries[i][j];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) a.entries[i][j] -= b.entries[i][j];
    return a;
  }

  friend Matrix operator*(Complex s, Matrix a) {
    for (auto& row : a.entries)
      for (auto& e : row) e *= s;
    return a;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

// Largest absolute component-wise difference (real and imaginary parts
// compared separately).
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const Complex d = a(i, j) - b(i, j);
      worst = std::max({worst, std::abs(d.real()), std::abs(d.imag())});
    }
  return worst;
}

template <std::size_t N>
Matrix<N> dagger(const Matrix<N>& m) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

// max |M^dagger M - I| over entries.
template <std::size_t N>
double unitarity_defect(const Matrix<N>& m) {
  return max_abs_diff(dagger(m) * m, Matrix<N>::identity());
}

template <std::size_t N>
bool is_unitary(const Matrix<N>& m, double tol = kUnitarityTol) {
  return unitarity_defect(m) <= tol;
}

// result[2i+k][2j+l] = A[i][j] * B[k][l]
inline Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

inline Complex det(const Matrix2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Amplitudes over the ordered basis {|FF>, |FB>, |BF>, |BB>}.
struct StateVector4 {
  std::array<Complex, 4> amplitudes{};

  static StateVector4 basis(std::size_t k) {
    StateVector4 s;
    s.amplitudes.at(k) = 1.0;
    return s;
  }

  Complex& operator[](std::size_t k) { return amplitudes[k]; }
  const Complex& operator[](std::size_t k) const { return amplitudes[k]; }

  double norm_squared() const {
    double n = 0.0;
    for (const auto& a : amplitudes) n += std::norm(a);
    return n;
  }

  bool is_normalized(double tol = kNormTol) const { return std::abs(norm_squared() - 1.0) <= tol; }

  bool is_finite() const {
    return std::all_of(amplitudes.begin(), amplitudes.end(), [](const Complex& a) {
      return std::isfinite(a.real()) && std::isfinite(a.imag());
    });
  }

  friend bool operator==(const StateVector4&, const StateVector4&) = default;
};

inline double max_abs_diff(const StateVector4& a, const StateVector4& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const Complex d = a[k] - b[k];
    worst = std::max({worst, std::abs(d.real()), std::abs(d.imag())});
  }
  return worst;
}

inline StateVector4 apply(const Matrix4& m, const StateVector4& v) {
  StateVector4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i] += m(i, j) * v[j];
  return out;
}

// Truncated Taylor series sum_{k<terms} M^k / k!. Only used as an
// independent check of closed-form exponentials.
inline Matrix4 expm_series(const Matrix4& m, int terms = 30) {
  if (terms < 20) throw std::invalid_argument("expm_series: terms must be >= 20");
  Matrix4 sum = Matrix4::identity();
  Matrix4 term = Matrix4::identity();
  for (int k = 1; k < terms; ++k) {
    term = Complex{1.0 / k} * (term * m);
    sum = sum + term;
  }
  return sum;
}

}  // namespace qbos
