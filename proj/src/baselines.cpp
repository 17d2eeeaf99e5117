#include "kcut/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kcut {

namespace {

struct Relaxation {
  const Eigen::MatrixXd &adjacency;
  std::vector<Edge> edges;
  double weight;       // (k-1)/k
  double lower_bound;  // -1/(k-1)

  double objective(const Eigen::MatrixXd &gram) const {
    double total = 0.0;
    for (const Edge &e : edges)
      total += weight * (1.0 - gram(e.u, e.v));
    return total;
  }

  double max_violation(const Eigen::MatrixXd &gram) const {
    double worst = 0.0;
    for (Eigen::Index j = 1; j < gram.cols(); ++j)
      for (Eigen::Index i = 0; i < j; ++i)
        worst = std::max(worst, lower_bound - gram(i, j));
    return worst;
  }
};

void normalize_rows(Eigen::MatrixXd &V) {
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    const double norm = V.row(i).norm();
    if (norm > 0.0)
      V.row(i) /= norm;
    else
      V(i, 0) = 1.0;
  }
}

} // namespace

Coloring random_coloring(const Graph &g, int k, Rng &rng) {
  if (k < 1)
    throw std::invalid_argument("random_coloring: k must be positive");
  std::uniform_int_distribution<int> color(0, k - 1);
  Coloring x(g.num_vertices());
  for (int &c : x)
    c = color(rng);
  return x;
}

SdpSolution solve_sdp_relaxation(const Graph &g, int k, const SdpOptions &opts) {
  if (k < 2)
    throw std::invalid_argument("solve_sdp_relaxation: k must be at least 2");
  const int n = g.num_vertices();
  SdpSolution sol;
  if (n == 0) {
    sol.converged = true;
    return sol;
  }
  const int rank =
      opts.rank > 0 ? opts.rank : static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;

  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(n, n);
  int max_degree = 0;
  for (const Edge &e : g.edges()) {
    adjacency(e.u, e.v) = adjacency(e.v, e.u) = 1.0;
  }
  for (int v = 0; v < n; ++v)
    max_degree = std::max(max_degree, g.degree(v));
  const Relaxation relax{adjacency, g.edges(), (k - 1.0) / k, -1.0 / (k - 1.0)};

  Rng rng(opts.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd V(n, rank);
  for (Eigen::Index i = 0; i < V.size(); ++i)
    V.data()[i] = normal(rng);
  normalize_rows(V);

  // Augmented Lagrangian for <v_i, v_j> >= lower_bound: each outer round
  // runs projected gradient ascent and then updates the multipliers. The
  // penalty weight grows only when a round fails to cut the violation by 4x.
  Eigen::MatrixXd multipliers = Eigen::MatrixXd::Zero(n, n);
  double penalty_weight = opts.initial_penalty;
  const double grad_tolerance = 1e-7 * std::max(1.0, relax.weight * max_degree);
  double step = 1.0 / (relax.weight * max_degree + 1.0);
  bool stationary = false;
  int iterations = 0;
  double previous_violation = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd gram = V * V.transpose();

  auto hinge = [&](const Eigen::MatrixXd &g) {
    Eigen::MatrixXd h =
        (multipliers.array() - penalty_weight * (g.array() - relax.lower_bound)).max(0.0);
    h.diagonal().setZero();
    return h;
  };
  auto merit = [&](const Eigen::MatrixXd &g) {
    const Eigen::MatrixXd h = hinge(g);
    const double ml = multipliers.squaredNorm();
    return relax.objective(g) - (h.squaredNorm() - ml) / (4.0 * penalty_weight);
  };

  while (iterations < opts.max_iterations) {
    double current = merit(gram);
    stationary = false;
    for (int it = 0; it < opts.penalty_interval && iterations < opts.max_iterations;
         ++it, ++iterations) {
      Eigen::MatrixXd grad = -relax.weight * (adjacency * V) + hinge(gram) * V;
      for (Eigen::Index i = 0; i < n; ++i)
        grad.row(i) -= grad.row(i).dot(V.row(i)) * V.row(i);
      if (grad.rowwise().norm().maxCoeff() < grad_tolerance) {
        stationary = true;
        break;
      }

      bool accepted = false;
      for (int tries = 0; tries < 60; ++tries) {
        Eigen::MatrixXd trial = V + step * grad;
        normalize_rows(trial);
        Eigen::MatrixXd trial_gram = trial * trial.transpose();
        const double value = merit(trial_gram);
        if (value >= current) {
          const double change = value - current;
          V = std::move(trial);
          gram = std::move(trial_gram);
          current = value;
          if (change <= opts.relative_tolerance * std::max(1.0, std::abs(current)))
            stationary = true;
          step *= 1.5;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted || stationary) {
        stationary = true;
        break;
      }
    }
    multipliers = hinge(gram);
    const double round_violation = relax.max_violation(gram);
    if (stationary && round_violation <= opts.feasibility_tolerance)
      break;
    if (round_violation > 0.25 * previous_violation)
      penalty_weight *= opts.penalty_growth;
    previous_violation = round_violation;
  }
  const double violation = relax.max_violation(gram);

  // Exact feasibility: v_i -> (sqrt(1-t) v_i, sqrt(t)) maps every inner
  // product g to (1-t) g + t, which lifts the smallest one onto the bound.
  if (violation > 0.0) {
    const double g_min = relax.lower_bound - violation;
    const double t = (relax.lower_bound - g_min) / (1.0 - g_min);
    Eigen::MatrixXd lifted(n, V.cols() + 1);
    lifted.leftCols(V.cols()) = std::sqrt(1.0 - t) * V;
    lifted.col(V.cols()).setConstant(std::sqrt(t));
    normalize_rows(lifted);
    V = std::move(lifted);
  }

  gram = V * V.transpose();
  sol.vectors = std::move(V);
  sol.objective = relax.objective(gram);
  sol.iterations = iterations;
  sol.max_violation = std::max(0.0, relax.max_violation(gram));
  sol.max_norm_residual = (gram.diagonal().array() - 1.0).abs().maxCoeff();
  sol.converged = stationary && violation <= opts.feasibility_tolerance &&
                  sol.max_norm_residual <= 1e-8;
  return sol;
}

Coloring newman_round(const SdpSolution &sol, int k, Rng &rng) {
  if (k < 2)
    throw std::invalid_argument("newman_round: k must be at least 2");
  const Eigen::Index n = sol.vectors.rows();
  const Eigen::Index rank = sol.vectors.cols();
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> rotation(0.0, 2.0 * kPi);
  const double sector = 2.0 * kPi / k;

  for (;;) {
    Eigen::VectorXd g1(rank), g2(rank);
    for (Eigen::Index t = 0; t < rank; ++t)
      g1(t) = normal(rng);
    for (Eigen::Index t = 0; t < rank; ++t)
      g2(t) = normal(rng);
    const double offset = rotation(rng);
    const Eigen::VectorXd x = sol.vectors * g1;
    const Eigen::VectorXd y = sol.vectors * g2;

    Coloring colors(n);
    bool degenerate = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (x(i) == 0.0 && y(i) == 0.0) {
        degenerate = true;
        break;
      }
      double angle = std::fmod(std::atan2(y(i), x(i)) + offset, 2.0 * kPi);
      if (angle < 0.0)
        angle += 2.0 * kPi;
      colors[i] = std::min(k - 1, static_cast<int>(angle / sector));
    }
    if (!degenerate)
      return colors;
  }
}

NewmanStats newman_best_of(const Graph &g, int k, int samples, std::uint64_t seed,
                           const SdpOptions &opts) {
  if (samples < 1)
    throw std::invalid_argument("newman_best_of: need at least one sample");
  NewmanStats stats;
  stats.sdp = solve_sdp_relaxation(g, k, opts);
  stats.values.reserve(samples);
  stats.best = -1.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(s)}));
    Coloring x = newman_round(stats.sdp, k, rng);
    const double value = static_cast<double>(cut_value(g, x));
    stats.values.push_back(value);
    if (value > stats.best) {
      stats.best = value;
      stats.best_coloring = std::move(x);
    }
  }
  stats.mean = std::accumulate(stats.values.begin(), stats.values.end(), 0.0) / samples;
  double sq = 0.0;
  for (double v : stats.values)
    sq += (v - stats.mean) * (v - stats.mean);
  stats.std = samples > 1 ? std::sqrt(sq / (samples - 1)) : 0.0;
  return stats;
}

} // namespace kcut
