#pragma once

// Fixed-size matrices and closed-form eigenvalues for the 2x2 and 3x3
// Jacobians of the model variants.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace revolt {

template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;

using Matrix2 = Matrix<2>;
using Matrix3 = Matrix<3>;

template <std::size_t N>
using Spectrum = std::array<std::complex<double>, N>;

double trace(const Matrix2& m) noexcept;
double trace(const Matrix3& m) noexcept;
double determinant(const Matrix2& m) noexcept;
double determinant(const Matrix3& m) noexcept;

/// Roots of the characteristic polynomial via the quadratic formula on
/// trace and determinant (cancellation-free form).
Spectrum<2> eigenvalues(const Matrix2& m) noexcept;

/// Roots of the characteristic cubic: one real root from Cardano or the
/// trigonometric form, Newton-polished, then deflation to a quadratic and a
/// final Newton pass on every root against the undeflated polynomial.
Spectrum<3> eigenvalues(const Matrix3& m) noexcept;

/// Unit vector spanning the null space of (m - value * I) for a real eigenvalue.
std::array<double, 3> eigenvector(const Matrix3& m, double value) noexcept;

/// Largest absolute entry.
template <std::size_t N>
double max_abs(const Matrix<N>& m) noexcept {
  double out = 0.0;
  for (const auto& row : m)
    for (double v : row) out = std::max(out, std::abs(v));
  return out;
}

}  // namespace revolt
