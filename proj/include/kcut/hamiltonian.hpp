#pragma once

#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "kcut/graph.hpp"
#include "kcut/types.hpp"

namespace kcut {

using QuditPair = std::pair<int, int>;

/// Diagonal two-local cost function
///
///   C = offset + sum_{i<j} sum_b J_{i,j}(b) Pi_{i,j}(b),
///
/// where Pi_{i,j}(b) projects onto colorings with x_j - x_i = b (mod k).
/// Only i < j tables are stored; J_{j,i}(b) = J_{i,j}(-b) is derived on lookup.
/// Tables that are constant in b act as a multiple of the identity and are
/// folded into the offset.
class CostHamiltonian {
public:
  using CouplingMap = std::map<QuditPair, std::vector<double>>;

  CostHamiltonian() = default;
  CostHamiltonian(int k, int n);

  /// MAX-k-CUT couplings J(b) = 1 - delta_{b,0} on every edge.
  static CostHamiltonian from_graph(const Graph &g, int k);

  int k() const { return k_; }
  int n() const { return n_; }
  double offset() const { return offset_; }
  void add_offset(double c) { offset_ += c; }

  const CouplingMap &couplings() const { return couplings_; }
  std::size_t num_couplings() const { return couplings_.size(); }

  /// J_{i,j}(b) in the (i,j) orientation; zero when the pair is uncoupled.
  double coupling(int i, int j, int b) const;
  /// Full table J_{i,j}(.) in the (i,j) orientation, or empty if uncoupled.
  std::vector<double> coupling_table(int i, int j) const;
  bool coupled(int i, int j) const;

  /// Accumulates J into the (i,j) table, honoring orientation.
  void add_coupling(int i, int j, std::span<const double> table);
  void remove_coupling(int i, int j);

  bool is_active(int q) const { return active_.at(q); }
  int num_active() const;
  std::vector<int> active_qudits() const;
  /// Removes a qudit. Throws if it still carries couplings.
  void deactivate(int q);

  /// Qudits w with a nonzero coupling to q, ascending.
  const std::set<int> &neighbors(int q) const { return adjacency_.at(q); }
  int degree(int q) const { return static_cast<int>(adjacency_.at(q).size()); }

private:
  void check_pair(int i, int j) const;

  int k_ = 2;
  int n_ = 0;
  double offset_ = 0.0;
  CouplingMap couplings_;
  std::vector<bool> active_;
  std::vector<std::set<int>> adjacency_;
};

/// Fourier representation of the couplings:
///   h_{u,v}(a)  = (1/k) sum_b J_{u,v}(b) w^{ab},
///   hh_{u,v}(b) = sum_a h_{u,v}(a) w^{ab} = J_{u,v}(-b),   w = e^{2 pi i/k}.
/// hh_{u,v}(c - d) is the eigenvalue of C_{u,v} on |c, d>.
struct FourierTables {
  int k = 2;
  std::map<QuditPair, std::vector<Complex>> h;
  std::map<QuditPair, std::vector<Complex>> h_hat;

  /// h_{u,v}(.) for either orientation (h_{v,u}(r) = h_{u,v}(-r)); empty if
  /// the pair is uncoupled.
  std::vector<Complex> h_oriented(int u, int v) const;
  /// hh_{u,v}(.) for either orientation; empty if the pair is uncoupled.
  std::vector<Complex> h_hat_oriented(int u, int v) const;
};

FourierTables fourier_tables(const CostHamiltonian &H);

/// offset + sum_{i<j} J_{i,j}(x_j - x_i). Colors of inactive qudits are ignored;
/// an active qudit without a color is an error.
double classical_energy(const CostHamiltonian &H, std::span<const int> x);

} // namespace kcut
