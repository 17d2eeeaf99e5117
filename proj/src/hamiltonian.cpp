#include "kcut/hamiltonian.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kcut {

CostHamiltonian::CostHamiltonian(int k, int n)
    : k_(k), n_(n), active_(std::max(n, 0), true), adjacency_(std::max(n, 0)) {
  if (k < 2)
    throw std::invalid_argument("CostHamiltonian: k must be at least 2");
  if (n < 0)
    throw std::invalid_argument("CostHamiltonian: negative qudit count");
}

CostHamiltonian CostHamiltonian::from_graph(const Graph &g, int k) {
  CostHamiltonian H(k, g.num_vertices());
  std::vector<double> table(k, 1.0);
  table[0] = 0.0;
  for (const Edge &e : g.edges())
    H.add_coupling(e.u, e.v, table);
  return H;
}

void CostHamiltonian::check_pair(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::out_of_range("CostHamiltonian: qudit index out of range");
  if (i == j)
    throw std::invalid_argument("CostHamiltonian: self-coupling on qudit " +
                                std::to_string(i));
}

double CostHamiltonian::coupling(int i, int j, int b) const {
  check_pair(i, j);
  const bool flip = i > j;
  auto it = couplings_.find(flip ? QuditPair{j, i} : QuditPair{i, j});
  if (it == couplings_.end())
    return 0.0;
  return it->second[mod_k(flip ? -b : b, k_)];
}

std::vector<double> CostHamiltonian::coupling_table(int i, int j) const {
  check_pair(i, j);
  const bool flip = i > j;
  auto it = couplings_.find(flip ? QuditPair{j, i} : QuditPair{i, j});
  if (it == couplings_.end())
    return {};
  if (!flip)
    return it->second;
  std::vector<double> table(k_);
  for (int b = 0; b < k_; ++b)
    table[b] = it->second[mod_k(-b, k_)];
  return table;
}

bool CostHamiltonian::coupled(int i, int j) const {
  check_pair(i, j);
  return couplings_.count(i < j ? QuditPair{i, j} : QuditPair{j, i}) > 0;
}

void CostHamiltonian::add_coupling(int i, int j, std::span<const double> table) {
  check_pair(i, j);
  if (table.size() != static_cast<std::size_t>(k_))
    throw std::invalid_argument("CostHamiltonian: coupling table must have k entries");
  if (!active_[i] || !active_[j])
    throw std::invalid_argument("CostHamiltonian: coupling to an inactive qudit");
  const bool flip = i > j;
  const QuditPair key = flip ? QuditPair{j, i} : QuditPair{i, j};
  auto [it, inserted] = couplings_.try_emplace(key, std::vector<double>(k_, 0.0));
  std::vector<double> &stored = it->second;
  for (int b = 0; b < k_; ++b)
    stored[b] += table[mod_k(flip ? -b : b, k_)];

  // A table constant in b is a multiple of sum_b Pi(b) = identity.
  if (std::all_of(stored.begin(), stored.end(),
                  [&](double v) { return v == stored.front(); })) {
    offset_ += stored.front();
    couplings_.erase(it);
    adjacency_[key.first].erase(key.second);
    adjacency_[key.second].erase(key.first);
    return;
  }
  adjacency_[key.first].insert(key.second);
  adjacency_[key.second].insert(key.first);
}

void CostHamiltonian::remove_coupling(int i, int j) {
  check_pair(i, j);
  couplings_.erase(i < j ? QuditPair{i, j} : QuditPair{j, i});
  adjacency_[i].erase(j);
  adjacency_[j].erase(i);
}

int CostHamiltonian::num_active() const {
  return static_cast<int>(std::count(active_.begin(), active_.end(), true));
}

std::vector<int> CostHamiltonian::active_qudits() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q)
    if (active_[q])
      out.push_back(q);
  return out;
}

void CostHamiltonian::deactivate(int q) {
  if (!adjacency_.at(q).empty())
    throw std::logic_error("CostHamiltonian: cannot deactivate a coupled qudit");
  active_[q] = false;
}

std::vector<Complex> FourierTables::h_oriented(int u, int v) const {
  auto it = h.find(u < v ? QuditPair{u, v} : QuditPair{v, u});
  if (it == h.end())
    return {};
  if (u < v)
    return it->second;
  std::vector<Complex> out(k);
  for (int r = 0; r < k; ++r)
    out[r] = it->second[mod_k(-r, k)];
  return out;
}

std::vector<Complex> FourierTables::h_hat_oriented(int u, int v) const {
  auto it = h_hat.find(u < v ? QuditPair{u, v} : QuditPair{v, u});
  if (it == h_hat.end())
    return {};
  if (u < v)
    return it->second;
  std::vector<Complex> out(k);
  for (int r = 0; r < k; ++r)
    out[r] = it->second[mod_k(-r, k)];
  return out;
}

FourierTables fourier_tables(const CostHamiltonian &H) {
  const int k = H.k();
  FourierTables tables;
  tables.k = k;
  for (const auto &[key, J] : H.couplings()) {
    std::vector<Complex> h(k), h_hat(k);
    for (int a = 0; a < k; ++a) {
      Complex sum = 0.0;
      for (int b = 0; b < k; ++b)
        sum += J[b] * root_of_unity(static_cast<long>(a) * b, k);
      h[a] = sum / static_cast<double>(k);
    }
    for (int b = 0; b < k; ++b) {
      Complex sum = 0.0;
      for (int a = 0; a < k; ++a)
        sum += h[a] * root_of_unity(static_cast<long>(a) * b, k);
      h_hat[b] = sum;
    }
    tables.h.emplace(key, std::move(h));
    tables.h_hat.emplace(key, std::move(h_hat));
  }
  return tables;
}

double classical_energy(const CostHamiltonian &H, std::span<const int> x) {
  if (x.size() < static_cast<std::size_t>(H.n()))
    throw std::invalid_argument("classical_energy: coloring shorter than qudit count");
  for (int q = 0; q < H.n(); ++q)
    if (H.is_active(q) && (x[q] < 0 || x[q] >= H.k()))
      throw std::invalid_argument("classical_energy: active qudit " + std::to_string(q) +
                                  " has no valid color");
  double total = H.offset();
  for (const auto &[key, J] : H.couplings())
    total += J[mod_k(x[key.second] - x[key.first], H.k())];
  return total;
}

} // namespace kcut
