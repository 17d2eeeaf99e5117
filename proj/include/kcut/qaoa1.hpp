#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "kcut/hamiltonian.hpp"
#include "kcut/types.hpp"

namespace kcut {

/// Level-1 angles: mixer phases beta_a (one per X eigenstate) and the cost
/// phase gamma. The simulated state is B(beta)^{(x)n} e^{i gamma C} |+>^{(x)n}.
struct Angles {
  std::vector<double> beta;
  double gamma = 0.0;
};

/// Reduced state of a qudit pair (u, v) as a k^2 x k^2 matrix in the
/// computational basis; row/column index c*k + d for |c>_u |d>_v.
struct TwoQuditDensity {
  int k = 2;
  CMatrix matrix;

  Complex operator()(int c, int d, int cp, int dp) const {
    return matrix(c * k + d, cp * k + dp);
  }
};

/// B(beta) = sum_a e^{i beta_a} |phi_a><phi_a| with |phi_a> = Z^a |+>.
CMatrix b_unitary(std::span<const double> beta);

/// The computational-basis state |phi_a> = Z^a |+>.
Eigen::VectorXcd phi_state(int k, int a);

/// Diagonal projector Pi(b) onto |c, c+b>.
CMatrix pi_projector(int k, int b);

/// Dense C_{u,v} = sum_a h_{u,v}(a) Z^a (x) Z^{-a} in the (u, v) ordering.
CMatrix pair_observable(const FourierTables &tables, int u, int v);

/// Couples the pair (u, v) to an environment qudit w prepared in |+> and traces
/// it out:  eta -> (1/k) sum_a D_w(a) eta D_w(a)^dagger  with
///   D_w(a)|c,d> = exp(i gamma [hh_{u,w}(c-a) + hh_{v,w}(d-a)]) |c,d>.
TwoQuditDensity env_channel_step(const TwoQuditDensity &eta, int u, int v, int w,
                                 const FourierTables &tables, double gamma);

/// rho_{u,v} = Tr_{rest} e^{i gamma C}|+><+|e^{-i gamma C}, built from the pair
/// state and one channel application per qudit coupled to u or v. If
/// `channel_calls` is given, the number of channel applications is added to it.
TwoQuditDensity reduced_density(const FourierTables &tables, const CostHamiltonian &H,
                                double gamma, int u, int v,
                                std::size_t *channel_calls = nullptr);

/// Tr(eta O) with eta = B(beta)^{(x)2} rho B(-beta)^{(x)2}. The rotation is done
/// blockwise, first on the u factor then on the v factor, k^3 per block.
Complex expectation_complex(const TwoQuditDensity &rho, std::span<const double> beta,
                            const CMatrix &observable);

/// Real part of expectation_complex for Hermitian observables. Throws
/// std::logic_error if the imaginary residue exceeds 1e-9.
double expectation(const TwoQuditDensity &rho, std::span<const double> beta,
                   const CMatrix &observable);

/// rho in the product basis |phi_p phi_q>, index p*k + q.
CMatrix to_phi_basis(const TwoQuditDensity &rho);

/// <Z_u^r Z_v^{-r}> from the phase-basis identity
///   sum_{p,q} e^{i(b_p + b_q - b_{p+r} - b_{q-r})} <phi_p phi_q|rho|phi_{p+r} phi_{q-r}>.
Complex zz_expectation(const TwoQuditDensity &rho, std::span<const double> beta, int r);

/// rho_{u,v} for every coupled pair, in ascending pair order.
struct PairDensity {
  QuditPair pair;
  TwoQuditDensity rho;
  std::size_t channel_calls = 0;
};
std::vector<PairDensity> pair_densities(const CostHamiltonian &H,
                                        const FourierTables &tables, double gamma,
                                        Exec exec = Exec::parallel);

/// <psi|C|psi> including the offset.
double energy(const CostHamiltonian &H, const Angles &angles, Exec exec = Exec::parallel);

/// M_{i,j}(b) = <Pi_{i,j}(b)> for every coupled pair, keyed by (i,j), i < j.
using CorrelationTable = std::map<QuditPair, std::vector<double>>;
CorrelationTable correlation_table(const CostHamiltonian &H, const Angles &angles,
                                   Exec exec = Exec::parallel);

/// Energy and correlations from one pass over the pair densities.
struct PairStatistics {
  double energy = 0.0;
  CorrelationTable correlations;
};
PairStatistics pair_statistics(const CostHamiltonian &H, const Angles &angles,
                               Exec exec = Exec::parallel);

namespace detail {
// Kernels behind pair_densities. The serial kernel is the reference; the
// OpenMP kernel must agree with it bit for bit.
std::vector<PairDensity> pair_densities_serial(const CostHamiltonian &H,
                                               const FourierTables &tables,
                                               double gamma);
std::vector<PairDensity> pair_densities_omp(const CostHamiltonian &H,
                                            const FourierTables &tables, double gamma);
} // namespace detail

} // namespace kcut
