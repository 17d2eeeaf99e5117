#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace kcut {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Color assignment indexed by qudit. kUnassigned marks qudits without a color.
using Coloring = std::vector<int>;
inline constexpr int kUnassigned = -1;

/// Selects the serial reference kernels or the OpenMP kernels. Both produce
/// bitwise identical results.
enum class Exec { serial, parallel };

inline constexpr double kPi = std::numbers::pi;

/// Representative of `a` in Z_k, always in [0, k).
constexpr int mod_k(long a, int k) {
  long r = a % k;
  return static_cast<int>(r < 0 ? r + k : r);
}

/// e^{2 pi i m / k}
inline Complex root_of_unity(long m, int k) {
  const double phase = 2.0 * kPi * static_cast<double>(mod_k(m, k)) / k;
  return {std::cos(phase), std::sin(phase)};
}

} // namespace kcut
