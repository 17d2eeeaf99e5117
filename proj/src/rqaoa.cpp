#include "kcut/rqaoa.hpp"

#include <limits>
#include <sstream>

namespace kcut {

namespace {
constexpr double kTieTolerance = 1e-12;
}

CostHamiltonian eliminate(const CostHamiltonian &H, int i, int j, int b) {
  const int k = H.k();
  if (i == j)
    throw std::invalid_argument("eliminate: i and j must differ");
  if (!H.is_active(i) || !H.is_active(j))
    throw std::invalid_argument("eliminate: both qudits must be active");
  b = mod_k(b, k);

  CostHamiltonian out = H;
  out.add_offset(H.coupling(i, j, b));
  out.remove_coupling(i, j);
  const std::vector<int> partners(H.neighbors(i).begin(), H.neighbors(i).end());
  for (int h : partners) {
    if (h == j)
      continue;
    // J_{i,h}(a) Pi_{i,h}(a) becomes J_{i,h}(a) Pi_{j,h}(a - b).
    const std::vector<double> from = H.coupling_table(i, h);
    std::vector<double> moved(k);
    for (int a = 0; a < k; ++a)
      moved[mod_k(a - b, k)] = from[a];
    out.remove_coupling(i, h);
    out.add_coupling(j, h, moved);
  }
  out.deactivate(i);
  return out;
}

EliminationResult elimination_step(const CostHamiltonian &H,
                                   const CorrelationTable &correlations) {
  if (correlations.empty())
    throw std::logic_error(
        "elimination_step: no couplings left; finish with brute_force_residual");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto &[pair, M] : correlations)
    for (double m : M)
      best = std::max(best, m);

  // CorrelationTable is ordered by (i, j); scanning b ascending gives the
  // lexicographically smallest (i, j, b) among near-maximal entries.
  for (const auto &[pair, M] : correlations)
    for (int b = 0; b < static_cast<int>(M.size()); ++b)
      if (M[b] >= best - kTieTolerance) {
        const auto [i, j] = pair;
        return {{i, j, b, M[b]}, eliminate(H, i, j, b)};
      }
  throw std::logic_error("elimination_step: no maximal correlation found");
}

EliminationResult elimination_step(const CostHamiltonian &H, const Angles &angles,
                                   Exec exec) {
  if (H.num_couplings() == 0)
    throw std::logic_error(
        "elimination_step: no couplings left; finish with brute_force_residual");
  return elimination_step(H, correlation_table(H, angles, exec));
}

Coloring reconstruct(std::span<const ConstraintRecord> trail, Coloring partial, int k) {
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
    if (it->survivor < 0 || it->survivor >= static_cast<int>(partial.size()) ||
        it->eliminated < 0 || it->eliminated >= static_cast<int>(partial.size()))
      throw std::out_of_range("reconstruct: trail index outside the coloring");
    const int survivor_color = partial[it->survivor];
    if (survivor_color == kUnassigned) {
      std::ostringstream msg;
      msg << "reconstruct: survivor " << it->survivor << " of eliminated qudit "
          << it->eliminated << " is unassigned (corrupted trail)";
      throw std::logic_error(msg.str());
    }
    partial[it->eliminated] = mod_k(survivor_color - it->shift, k);
  }
  return partial;
}

ResidualMaximum brute_force_residual(const CostHamiltonian &H, std::size_t budget) {
  const int k = H.k();
  std::vector<int> free;
  for (int q : H.active_qudits())
    if (H.degree(q) > 0)
      free.push_back(q);

  ResidualMaximum best{H.offset(), Coloring(H.n(), kUnassigned)};
  for (int q : H.active_qudits())
    best.x[q] = 0;
  if (free.empty())
    return best;

  std::size_t count = 1;
  for (std::size_t t = 1; t < free.size(); ++t) {
    count *= k;
    if (count > budget) {
      std::ostringstream msg;
      msg << "brute_force_residual: " << free.size() << " coupled qudits with k=" << k
          << " exceed the budget of " << budget << " assignments";
      throw std::length_error(msg.str());
    }
  }

  Coloring x = best.x;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < count; ++idx) {
    double value = H.offset();
    for (const auto &[key, J] : H.couplings())
      value += J[mod_k(x[key.second] - x[key.first], k)];
    if (value > best.value) {
      best.value = value;
      best.x = x;
    }
    for (std::size_t t = 1; t < free.size() && ++x[free[t]] == k; ++t)
      x[free[t]] = 0;
  }
  return best;
}

RqaoaResult run_rqaoa(const CostHamiltonian &H, const RqaoaOptions &opts) {
  if (opts.cutoff < 1)
    throw std::invalid_argument("run_rqaoa: cutoff must be at least 1");
  std::size_t cutoff_size = 1;
  for (int t = 0; t < opts.cutoff; ++t) {
    cutoff_size *= H.k();
    if (cutoff_size > opts.brute_force_budget)
      throw std::length_error("run_rqaoa: k^cutoff exceeds the brute-force budget");
  }

  AngleOptimizer optimizer = opts.optimizer;
  if (!optimizer) {
    OptimizerOptions oo;
    oo.exec = opts.exec;
    optimizer = [oo](const CostHamiltonian &h) { return optimize_angles(h, oo); };
  }

  RqaoaResult result;
  CostHamiltonian current = H;
  while (current.num_active() > opts.cutoff && current.num_couplings() > 0) {
    OptimizeResult step = optimizer(current);
    auto [record, reduced] = elimination_step(current, step.angles, opts.exec);
    result.trail.push_back(record);
    result.steps.push_back(std::move(step));
    current = std::move(reduced);
  }

  ResidualMaximum residual = brute_force_residual(current, opts.brute_force_budget);
  result.x = reconstruct(result.trail, std::move(residual.x), H.k());
  for (int q = 0; q < H.n(); ++q)
    if (H.is_active(q) && result.x[q] == kUnassigned)
      result.x[q] = 0;
  result.value = classical_energy(H, result.x);
  return result;
}

} // namespace kcut
