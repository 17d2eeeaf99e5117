#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kcut/graph.hpp"
#include "kcut/rng.hpp"
#include "kcut/types.hpp"

namespace kcut {

/// I.i.d. uniform colors in Z_k.
Coloring random_coloring(const Graph &g, int k, Rng &rng);

/// Low-rank solution of the vector relaxation
///   max sum_{(i,j) in E} (k-1)/k (1 - <v_i, v_j>)
///   s.t. |v_i| = 1,  <v_i, v_j> >= -1/(k-1).
struct SdpSolution {
  Eigen::MatrixXd vectors;  // one unit vector per row
  double objective = 0.0;
  bool converged = false;
  int iterations = 0;
  double max_norm_residual = 0.0;
  double max_violation = 0.0;
};

struct SdpOptions {
  int rank = 0;  // 0 selects ceil(sqrt(2n)) + 1
  int max_iterations = 5000;
  int penalty_interval = 100;
  double penalty_growth = 1.5;
  double initial_penalty = 10.0;
  double relative_tolerance = 1e-9;
  double feasibility_tolerance = 1e-6;
  std::uint64_t seed = 1;
};

/// Low-rank Riemannian gradient ascent on the product of spheres. The pairwise
/// lower bound is handled by an augmented Lagrangian; a final lift by one extra
/// dimension makes the returned vectors exactly feasible. `converged` reports
/// whether the ascent stalled with the bound met before the lift, which is rare
/// within the default iteration budget.
SdpSolution solve_sdp_relaxation(const Graph &g, int k, const SdpOptions &opts = {});

/// Projects the vectors onto a random Gaussian plane and colors each vertex by
/// the sector (k equal sectors, randomly rotated) containing its image.
Coloring newman_round(const SdpSolution &sol, int k, Rng &rng);

struct NewmanStats {
  double best = 0.0;
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> values;  // cut value of each rounding, in sample order
  Coloring best_coloring;
  SdpSolution sdp;
};

/// One relaxation solve, then `samples` roundings; sample s uses the RNG
/// substream derive_seed(seed, {s}).
NewmanStats newman_best_of(const Graph &g, int k, int samples, std::uint64_t seed,
                           const SdpOptions &opts = {});

} // namespace kcut
