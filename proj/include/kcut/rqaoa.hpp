#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "kcut/angle_optimizer.hpp"
#include "kcut/hamiltonian.hpp"
#include "kcut/qaoa1.hpp"

namespace kcut {

/// Constraint x_survivor = x_eliminated + shift (mod k) imposed by one
/// correlation-rounding step.
struct ConstraintRecord {
  int eliminated = 0;
  int survivor = 0;
  int shift = 0;
  double correlation = 0.0;
};

/// Substitutes x_i = x_j - b into H: every J_{i,h}(a) moves to J_{j,h}(a - b),
/// J_{i,j}(b) moves into the offset, and qudit i is removed.
CostHamiltonian eliminate(const CostHamiltonian &H, int i, int j, int b);

struct EliminationResult {
  ConstraintRecord record;
  CostHamiltonian reduced;
};

/// Picks the coupled pair (i,j), i < j, and shift b with the largest
/// M_{i,j}(b) (values within 1e-12 of the maximum count as ties; the
/// lexicographically smallest (i,j,b) wins) and eliminates i. Throws
/// std::logic_error if H has no couplings.
EliminationResult elimination_step(const CostHamiltonian &H, const Angles &angles,
                                   Exec exec = Exec::parallel);
EliminationResult elimination_step(const CostHamiltonian &H,
                                   const CorrelationTable &correlations);

/// Fills in eliminated qudits last-to-first via x_i = x_j - b.
Coloring reconstruct(std::span<const ConstraintRecord> trail, Coloring partial, int k);

struct ResidualMaximum {
  double value = 0.0;
  Coloring x;  // colors for the active qudits, kUnassigned elsewhere
};

/// Exhaustive maximization over the active qudits that carry couplings (the
/// first is pinned to color 0). Uncoupled active qudits get color 0.
ResidualMaximum brute_force_residual(const CostHamiltonian &H,
                                     std::size_t budget = 1'000'000);

struct RqaoaOptions {
  int cutoff = 9;
  std::size_t brute_force_budget = 1'000'000;
  AngleOptimizer optimizer;  // defaults to optimize_angles
  Exec exec = Exec::parallel;
};

struct RqaoaResult {
  Coloring x;
  double value = 0.0;  // classical energy of x under the input Hamiltonian
  std::vector<ConstraintRecord> trail;
  std::vector<OptimizeResult> steps;
};

/// Recursive elimination down to `cutoff` active qudits, exhaustive search on
/// the rest, then reconstruction.
RqaoaResult run_rqaoa(const CostHamiltonian &H, const RqaoaOptions &opts = {});

} // namespace kcut
