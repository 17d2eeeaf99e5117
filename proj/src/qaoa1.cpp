#include "kcut/qaoa1.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kcut {

namespace {

constexpr double kImagResidue = 1e-9;

// Diagonal of exp(i gamma hh_{u,w}(c - a) + i gamma hh_{v,w}(d - a)) for every
// environment color a, as a k^2 x k matrix (column a).
CMatrix kraus_diagonals(const std::vector<Complex> &hu, const std::vector<Complex> &hv,
                        int k, double gamma) {
  CMatrix diag(k * k, k);
  const Complex ig(0.0, gamma);
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c)
      for (int d = 0; d < k; ++d) {
        Complex phase = 0.0;
        if (!hu.empty())
          phase += hu[mod_k(c - a, k)];
        if (!hv.empty())
          phase += hv[mod_k(d - a, k)];
        diag(c * k + d, a) = std::exp(ig * phase);
      }
  return diag;
}

void apply_channel(CMatrix &eta, const std::vector<Complex> &hu,
                   const std::vector<Complex> &hv, int k, double gamma) {
  if (hu.empty() && hv.empty())
    return;
  const CMatrix diag = kraus_diagonals(hu, hv, k, gamma);
  // (1/k) sum_a D(a) eta D(a)^dagger is a Hadamard product with (1/k) D D^dagger.
  const CMatrix weights = (diag * diag.adjoint()) / static_cast<double>(k);
  eta = eta.cwiseProduct(weights);
}

CMatrix phi_basis(int k) {
  CMatrix phi(k, k);
  for (int a = 0; a < k; ++a)
    phi.col(a) = phi_state(k, a);
  return phi;
}

} // namespace

CMatrix b_unitary(std::span<const double> beta) {
  const int k = static_cast<int>(beta.size());
  if (k < 1)
    throw std::invalid_argument("b_unitary: empty beta");
  CMatrix B = CMatrix::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    const Complex weight = std::polar(1.0, beta[a]) / static_cast<double>(k);
    for (int c = 0; c < k; ++c)
      for (int cp = 0; cp < k; ++cp)
        B(c, cp) += weight * root_of_unity(static_cast<long>(a) * (c - cp), k);
  }
  return B;
}

Eigen::VectorXcd phi_state(int k, int a) {
  Eigen::VectorXcd v(k);
  const double norm = 1.0 / std::sqrt(static_cast<double>(k));
  for (int c = 0; c < k; ++c)
    v(c) = norm * root_of_unity(static_cast<long>(a) * c, k);
  return v;
}

CMatrix pi_projector(int k, int b) {
  CMatrix P = CMatrix::Zero(k * k, k * k);
  for (int c = 0; c < k; ++c) {
    const int idx = c * k + mod_k(c + b, k);
    P(idx, idx) = 1.0;
  }
  return P;
}

CMatrix pair_observable(const FourierTables &tables, int u, int v) {
  const int k = tables.k;
  CMatrix O = CMatrix::Zero(k * k, k * k);
  const auto h = tables.h_oriented(u, v);
  if (h.empty())
    return O;
  for (int c = 0; c < k; ++c)
    for (int d = 0; d < k; ++d) {
      Complex value = 0.0;
      for (int a = 0; a < k; ++a)
        value += h[a] * root_of_unity(static_cast<long>(a) * (c - d), k);
      O(c * k + d, c * k + d) = value;
    }
  return O;
}

TwoQuditDensity env_channel_step(const TwoQuditDensity &eta, int u, int v, int w,
                                 const FourierTables &tables, double gamma) {
  if (w == u || w == v)
    throw std::invalid_argument("env_channel_step: environment qudit must differ from u, v");
  TwoQuditDensity out = eta;
  apply_channel(out.matrix, tables.h_hat_oriented(u, w), tables.h_hat_oriented(v, w),
                eta.k, gamma);
  return out;
}

TwoQuditDensity reduced_density(const FourierTables &tables, const CostHamiltonian &H,
                                double gamma, int u, int v, std::size_t *channel_calls) {
  if (u == v)
    throw std::invalid_argument("reduced_density: u and v must differ");
  if (u < 0 || v < 0 || u >= H.n() || v >= H.n())
    throw std::out_of_range("reduced_density: qudit index out of range");
  if (!H.is_active(u) || !H.is_active(v))
    throw std::invalid_argument("reduced_density: qudit " +
                                std::to_string(H.is_active(u) ? v : u) + " is inactive");
  const int k = H.k();
  const Complex ig(0.0, gamma);

  // e^{i gamma C_uv} |++>, entries e^{i gamma hh_uv(c-d)} / k.
  Eigen::VectorXcd pair_state(k * k);
  const auto huv = tables.h_hat_oriented(u, v);
  for (int c = 0; c < k; ++c)
    for (int d = 0; d < k; ++d)
      pair_state(c * k + d) =
          (huv.empty() ? Complex(1.0) : std::exp(ig * huv[mod_k(c - d, k)])) /
          static_cast<double>(k);

  TwoQuditDensity eta{k, pair_state * pair_state.adjoint()};

  // Environment: qudits coupled to u or v; common neighbors are visited once.
  auto nu = H.neighbors(u).begin(), nu_end = H.neighbors(u).end();
  auto nv = H.neighbors(v).begin(), nv_end = H.neighbors(v).end();
  std::size_t calls = 0;
  while (nu != nu_end || nv != nv_end) {
    int w;
    if (nv == nv_end || (nu != nu_end && *nu < *nv))
      w = *nu++;
    else if (nu == nu_end || *nv < *nu)
      w = *nv++;
    else {
      w = *nu++;
      ++nv;
    }
    if (w == u || w == v)
      continue;
    apply_channel(eta.matrix, tables.h_hat_oriented(u, w), tables.h_hat_oriented(v, w), k,
                  gamma);
    ++calls;
  }
  if (channel_calls)
    *channel_calls += calls;
  return eta;
}

Complex expectation_complex(const TwoQuditDensity &rho, std::span<const double> beta,
                            const CMatrix &observable) {
  const int k = rho.k;
  if (static_cast<int>(beta.size()) != k)
    throw std::invalid_argument("expectation: beta must have k entries");
  if (rho.matrix.rows() != k * k || observable.rows() != k * k ||
      observable.cols() != k * k)
    throw std::invalid_argument("expectation: dimension mismatch");

  const CMatrix B = b_unitary(beta);
  const CMatrix Bd = B.adjoint();

  // rho = sum_{a,b} M(a,b) (x) |a><b|, M(a,b)[c,c'] = rho[(c,a),(c',b)].
  CMatrix eta(k * k, k * k);
  CMatrix block(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      for (int c = 0; c < k; ++c)
        for (int cp = 0; cp < k; ++cp)
          block(c, cp) = rho.matrix(c * k + a, cp * k + b);
      const CMatrix rotated = B * block * Bd;
      for (int c = 0; c < k; ++c)
        for (int cp = 0; cp < k; ++cp)
          eta(c * k + a, cp * k + b) = rotated(c, cp);
    }
  // eta' = sum_{a,b} |a><b| (x) L(a,b): contiguous k x k blocks.
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      eta.block(a * k, b * k, k, k) = B * eta.block(a * k, b * k, k, k) * Bd;

  return eta.cwiseProduct(observable.transpose()).sum();
}

double expectation(const TwoQuditDensity &rho, std::span<const double> beta,
                   const CMatrix &observable) {
  const Complex value = expectation_complex(rho, beta, observable);
  if (std::abs(value.imag()) > kImagResidue)
    throw std::logic_error("expectation: imaginary residue " +
                           std::to_string(value.imag()) + " for a Hermitian observable");
  return value.real();
}

CMatrix to_phi_basis(const TwoQuditDensity &rho) {
  const int k = rho.k;
  const CMatrix phi = phi_basis(k);
  CMatrix phi2(k * k, k * k);
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q)
      for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d)
          phi2(c * k + d, p * k + q) = phi(c, p) * phi(d, q);
  return phi2.adjoint() * rho.matrix * phi2;
}

Complex zz_expectation(const TwoQuditDensity &rho, std::span<const double> beta, int r) {
  const int k = rho.k;
  if (static_cast<int>(beta.size()) != k)
    throw std::invalid_argument("zz_expectation: beta must have k entries");
  const CMatrix in_phi = to_phi_basis(rho);

  Complex total = 0.0;
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      const int pr = mod_k(p + r, k);
      const int qr = mod_k(q - r, k);
      total += std::polar(1.0, beta[p] + beta[q] - beta[pr] - beta[qr]) *
               in_phi(p * k + q, pr * k + qr);
    }
  return total;
}

std::vector<PairDensity> pair_densities(const CostHamiltonian &H,
                                        const FourierTables &tables, double gamma,
                                        Exec exec) {
  return exec == Exec::serial ? detail::pair_densities_serial(H, tables, gamma)
                              : detail::pair_densities_omp(H, tables, gamma);
}

PairStatistics pair_statistics(const CostHamiltonian &H, const Angles &angles, Exec exec) {
  const int k = H.k();
  if (static_cast<int>(angles.beta.size()) != k)
    throw std::invalid_argument("pair_statistics: beta must have k entries");
  const FourierTables tables = fourier_tables(H);
  const auto densities = pair_densities(H, tables, angles.gamma, exec);

  PairStatistics stats;
  stats.energy = H.offset();
  for (const auto &[pair, rho, calls] : densities) {
    stats.energy += expectation(rho, angles.beta, pair_observable(tables, pair.first, pair.second));

    std::vector<Complex> zz(k);
    for (int r = 0; r < k; ++r)
      zz[r] = zz_expectation(rho, angles.beta, r);
    std::vector<double> M(k);
    for (int b = 0; b < k; ++b) {
      Complex m = 0.0;
      for (int r = 0; r < k; ++r)
        m += root_of_unity(static_cast<long>(r) * b, k) * zz[r];
      M[b] = m.real() / k;
    }
    stats.correlations.emplace(pair, std::move(M));
  }
  return stats;
}

double energy(const CostHamiltonian &H, const Angles &angles, Exec exec) {
  const int k = H.k();
  if (static_cast<int>(angles.beta.size()) != k)
    throw std::invalid_argument("energy: beta must have k entries");
  const FourierTables tables = fourier_tables(H);
  const auto densities = pair_densities(H, tables, angles.gamma, exec);
  double total = H.offset();
  for (const auto &pd : densities)
    total += expectation(pd.rho, angles.beta,
                         pair_observable(tables, pd.pair.first, pd.pair.second));
  return total;
}

CorrelationTable correlation_table(const CostHamiltonian &H, const Angles &angles,
                                   Exec exec) {
  return pair_statistics(H, angles, exec).correlations;
}

} // namespace kcut
