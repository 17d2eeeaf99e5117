#pragma once

#include <vector>

#include "kcut/hamiltonian.hpp"
#include "kcut/qaoa1.hpp"
#include "kcut/types.hpp"

namespace kcut {

/// Full k^n amplitude vector. Amplitude index is the mixed-radix number
/// sum_i x_i k^i, so qudit 0 is the fastest-varying digit.
struct StateVector {
  int k = 2;
  int n = 0;
  std::vector<Complex> amplitudes;
};

inline constexpr std::size_t kStateVectorLimit = 1'000'000;

/// B(beta)^{(x)n} e^{i gamma C} |+>^{(x)n}, computed directly. The offset only
/// contributes a global phase and is left out.
StateVector statevector_qaoa1(const CostHamiltonian &H, const Angles &angles);

/// Reduced density of qudits (u, v), index c*k + d as in TwoQuditDensity.
TwoQuditDensity statevector_reduced_density(const StateVector &psi, int u, int v);

/// <psi| O_{u,v} |psi> for a k^2 x k^2 observable on (u, v).
Complex statevector_expectation(const StateVector &psi, int u, int v, const CMatrix &O);

/// <psi|C|psi> including the offset.
double statevector_energy(const CostHamiltonian &H, const StateVector &psi);

struct ExactMaxCut {
  double value = 0.0;
  Coloring x;
};

/// Global maximum of classical_energy over all colorings of the active qudits.
/// The first active qudit is pinned to color 0; requires k^{n_active - 1} <= 1e7.
ExactMaxCut exact_max_kcut(const CostHamiltonian &H, int k);

} // namespace kcut
