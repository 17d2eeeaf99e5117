#include "kcut/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kcut {

namespace {

std::size_t checked_power(int k, int n, std::size_t limit, const char *what) {
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) {
    size *= static_cast<std::size_t>(k);
    if (size > limit)
      throw std::length_error(std::string(what) + ": k^n exceeds the size limit");
  }
  return size;
}

} // namespace

StateVector statevector_qaoa1(const CostHamiltonian &H, const Angles &angles) {
  const int k = H.k();
  const int n = H.n();
  if (static_cast<int>(angles.beta.size()) != k)
    throw std::invalid_argument("statevector_qaoa1: beta must have k entries");
  const std::size_t dim = checked_power(k, n, kStateVectorLimit, "statevector_qaoa1");

  StateVector psi{k, n, std::vector<Complex>(dim)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<int> x(n, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double cost = 0.0;
    for (const auto &[key, J] : H.couplings())
      cost += J[mod_k(x[key.second] - x[key.first], k)];
    psi.amplitudes[idx] = std::polar(norm, angles.gamma * cost);
    for (int q = 0; q < n && ++x[q] == k; ++q)
      x[q] = 0;
  }

  const CMatrix B = b_unitary(angles.beta);
  std::vector<Complex> local(k);
  std::size_t stride = 1;
  for (int q = 0; q < n; ++q, stride *= k) {
    for (std::size_t base = 0; base < dim; ++base) {
      if ((base / stride) % k != 0)
        continue;
      for (int c = 0; c < k; ++c)
        local[c] = psi.amplitudes[base + c * stride];
      for (int c = 0; c < k; ++c) {
        Complex sum = 0.0;
        for (int cp = 0; cp < k; ++cp)
          sum += B(c, cp) * local[cp];
        psi.amplitudes[base + c * stride] = sum;
      }
    }
  }
  return psi;
}

TwoQuditDensity statevector_reduced_density(const StateVector &psi, int u, int v) {
  const int k = psi.k;
  if (u < 0 || v < 0 || u >= psi.n || v >= psi.n || u == v)
    throw std::out_of_range("statevector_reduced_density: bad qudit indices");
  std::size_t su = 1, sv = 1;
  for (int i = 0; i < u; ++i)
    su *= k;
  for (int i = 0; i < v; ++i)
    sv *= k;

  TwoQuditDensity rho{k, CMatrix::Zero(k * k, k * k)};
  const std::size_t dim = psi.amplitudes.size();
  for (std::size_t base = 0; base < dim; ++base) {
    if ((base / su) % k != 0 || (base / sv) % k != 0)
      continue;
    for (int c = 0; c < k; ++c)
      for (int d = 0; d < k; ++d) {
        const Complex left = psi.amplitudes[base + c * su + d * sv];
        for (int cp = 0; cp < k; ++cp)
          for (int dp = 0; dp < k; ++dp)
            rho.matrix(c * k + d, cp * k + dp) +=
                left * std::conj(psi.amplitudes[base + cp * su + dp * sv]);
      }
  }
  return rho;
}

Complex statevector_expectation(const StateVector &psi, int u, int v, const CMatrix &O) {
  const int k = psi.k;
  if (O.rows() != k * k || O.cols() != k * k)
    throw std::invalid_argument("statevector_expectation: observable must be k^2 x k^2");
  const TwoQuditDensity rho = statevector_reduced_density(psi, u, v);
  return rho.matrix.cwiseProduct(O.transpose()).sum();
}

double statevector_energy(const CostHamiltonian &H, const StateVector &psi) {
  const int k = H.k();
  double total = H.offset();
  const std::size_t dim = psi.amplitudes.size();
  std::vector<int> x(H.n(), 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double cost = 0.0;
    for (const auto &[key, J] : H.couplings())
      cost += J[mod_k(x[key.second] - x[key.first], k)];
    total += std::norm(psi.amplitudes[idx]) * cost;
    for (int q = 0; q < H.n() && ++x[q] == k; ++q)
      x[q] = 0;
  }
  return total;
}

ExactMaxCut exact_max_kcut(const CostHamiltonian &H, int k) {
  if (k != H.k())
    throw std::invalid_argument("exact_max_kcut: k does not match the Hamiltonian");
  const std::vector<int> active = H.active_qudits();
  ExactMaxCut best{H.offset(), Coloring(H.n(), kUnassigned)};
  if (active.empty())
    return best;
  const int free_qudits = static_cast<int>(active.size()) - 1;
  const std::size_t count = checked_power(k, free_qudits, 10'000'000, "exact_max_kcut");

  Coloring x(H.n(), 0);
  for (int q = 0; q < H.n(); ++q)
    if (!H.is_active(q))
      x[q] = kUnassigned;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < count; ++idx) {
    double value = H.offset();
    for (const auto &[key, J] : H.couplings())
      value += J[mod_k(x[key.second] - x[key.first], k)];
    if (value > best.value) {
      best.value = value;
      best.x = x;
    }
    for (int t = 1; t <= free_qudits && ++x[active[t]] == k; ++t)
      x[active[t]] = 0;
  }
  return best;
}

} // namespace kcut
