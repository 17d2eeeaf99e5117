#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kcut/hamiltonian.hpp"
#include "kcut/qaoa1.hpp"

namespace kcut {

class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// For k = 3 and fixed gamma the energy is
///   E(beta) = c_const + Re sum_a g_a e^{i theta_a},  theta_a = 3 beta_a - sum(beta).
struct GCoefficients {
  double c_const = 0.0;
  std::array<Complex, 3> g{};
};

/// Throws UnsupportedError unless H.k() == 3.
GCoefficients g_coefficients(const CostHamiltonian &H, double gamma,
                             Exec exec = Exec::parallel);
GCoefficients g_coefficients(std::span<const PairDensity> densities,
                             const FourierTables &tables, double offset);

/// F''(z) = Re(g_0 z) + |g_1 + conj(g_2) z|, the energy above c_const after
/// maximizing over theta_1 for theta_0 = arg z.
double f_double_prime(const std::array<Complex, 3> &g, Complex z);

/// Coefficients (ascending powers) of the quartic whose unit-circle roots
/// contain every solution of F''(z) = f, |z| = 1.
std::array<Complex, 5> level_set_quartic(const std::array<Complex, 3> &g, double f);

/// Roots of sum_i coeffs[i] z^i via the eigenvalues of the companion matrix.
/// Vanishing leading coefficients (relative to the largest one) are dropped
/// first. Returns an empty vector for constant polynomials.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

struct BetaMaximum {
  std::array<double, 3> beta{};  // gauge: beta_0 + beta_1 + beta_2 = 0
  double value = 0.0;            // max F'' = max_beta E(beta) - c_const
  Complex z{1.0, 0.0};           // e^{i theta_0} at the maximum
  int iterations = 0;
};

/// Maximizes F'' over the unit circle by bisection on the level f, deciding
/// feasibility of F''(z) = f from the unit-circle roots of the level-set quartic.
BetaMaximum maximize_beta(const GCoefficients &gc, double tol = 1e-10);

struct GridPoint {
  double gamma = 0.0;
  double energy = 0.0;
  std::vector<double> beta;
};

struct OptimizeResult {
  Angles angles;
  double energy = 0.0;
  std::vector<GridPoint> trace;  // coarse grid followed by refined grid
  bool heuristic = false;
};

struct OptimizerOptions {
  int grid_points = 50;
  double gamma_max = kPi;
  Exec exec = Exec::parallel;
  // Heuristic search (k != 3) only.
  int restarts = 6;
  std::uint64_t seed = 0x5eed;
};

/// Two-stage gamma grid search with analytic beta maximization (k = 3): a
/// coarse grid on [0, gamma_max], then a refined grid on the interval between
/// the neighbors of the best coarse point, clamped to [0, gamma_max].
/// Ties go to the smaller gamma.
OptimizeResult optimize(const CostHamiltonian &H, const OptimizerOptions &opts = {});

/// Same gamma schedule for any k, with beta found by random-restart pattern
/// search on the exact beta landscape. Not guaranteed to find the optimum.
OptimizeResult optimize_heuristic(const CostHamiltonian &H,
                                  const OptimizerOptions &opts = {});

/// optimize() for k = 3, optimize_heuristic() otherwise.
OptimizeResult optimize_angles(const CostHamiltonian &H, const OptimizerOptions &opts = {});

using AngleOptimizer = std::function<OptimizeResult(const CostHamiltonian &)>;

/// Exact beta dependence of the energy at a fixed gamma, for any k:
///   E(beta) = offset + Re sum_{a,b,c} T[a,b,c] e^{i(b_a + b_b - b_{a+c} - b_{b-c})}.
/// Evaluating it costs k^3 per beta instead of a pass over all pairs.
class BetaLandscape {
public:
  BetaLandscape(const CostHamiltonian &H, double gamma, Exec exec = Exec::parallel);
  BetaLandscape(std::span<const PairDensity> densities, const FourierTables &tables,
                double offset);

  int k() const { return k_; }
  double operator()(std::span<const double> beta) const;

private:
  int k_;
  double offset_;
  std::vector<Complex> tensor_;  // index (a*k + b)*k + c
};

} // namespace kcut
