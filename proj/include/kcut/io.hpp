#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "kcut/graph.hpp"
#include "kcut/hamiltonian.hpp"

namespace kcut {

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Graph:       {"n": N, "edges": [[i, j], ...], "tags": [...]}
// Hamiltonian: {"k": K, "n": N, "offset": c, "couplings": [{"i", "j", "J": [...]}],
//               "active": [...] (optional)}
nlohmann::json to_json(const Graph &g);
nlohmann::json to_json(const CostHamiltonian &H);
Graph graph_from_json(const nlohmann::json &j);
CostHamiltonian hamiltonian_from_json(const nlohmann::json &j);

nlohmann::json read_json(const std::filesystem::path &path);
void write_json(const std::filesystem::path &path, const nlohmann::json &j);

/// A problem file is either a graph or a Hamiltonian. Graphs are turned into
/// MAX-k-CUT Hamiltonians with the given k; Hamiltonians carry their own k,
/// which must match `k` unless `k` is 0.
struct Problem {
  CostHamiltonian hamiltonian;
  std::optional<Graph> graph;
};
Problem load_problem(const std::filesystem::path &path, int k);

} // namespace kcut
