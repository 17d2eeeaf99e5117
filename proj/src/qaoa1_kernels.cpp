#include "kcut/qaoa1.hpp"

#include <omp.h>

namespace kcut::detail {

std::vector<PairDensity> pair_densities_serial(const CostHamiltonian &H,
                                               const FourierTables &tables,
                                               double gamma) {
  std::vector<PairDensity> out;
  out.reserve(H.num_couplings());
  for (const auto &entry : H.couplings()) {
    const QuditPair pair = entry.first;
    std::size_t calls = 0;
    auto rho = reduced_density(tables, H, gamma, pair.first, pair.second, &calls);
    out.push_back({pair, std::move(rho), calls});
  }
  return out;
}

std::vector<PairDensity> pair_densities_omp(const CostHamiltonian &H,
                                            const FourierTables &tables, double gamma) {
  std::vector<QuditPair> pairs;
  pairs.reserve(H.num_couplings());
  for (const auto &entry : H.couplings())
    pairs.push_back(entry.first);

  std::vector<PairDensity> out(pairs.size());
  const long count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 4) if (count > 8)
  for (long p = 0; p < count; ++p) {
    std::size_t calls = 0;
    auto rho = reduced_density(tables, H, gamma, pairs[p].first, pairs[p].second, &calls);
    out[p] = {pairs[p], std::move(rho), calls};
  }
  return out;
}

} // namespace kcut::detail
