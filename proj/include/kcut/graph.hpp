#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kcut/rng.hpp"

namespace kcut {

struct Edge {
  int u = 0;
  int v = 0;
  auto operator<=>(const Edge &) const = default;
};

/// Marks graphs drawn from the planted 3-partite ensemble; their maximum
/// 3-cut is known to be |E|.
inline constexpr std::string_view kEnsembleTag = "ensemble";

/// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n);
  /// Edges may be given in either orientation; they are normalized to u < v
  /// and sorted. Throws std::invalid_argument on self-loops, duplicates or
  /// out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges, std::vector<std::string> tags = {});

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge> &edges() const { return edges_; }
  const std::vector<int> &neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
  bool has_edge(int u, int v) const;

  const std::vector<std::string> &tags() const { return tags_; }
  bool has_tag(std::string_view tag) const;

private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::string> tags_;
};

class GenerationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parameters of the 3-partite ensemble. `d` is the degree inside each of the
/// three bipartite blocks, so every vertex of a generated graph has degree 2d.
struct EnsembleConfig {
  int n = 30;
  int d = 4;
  std::uint64_t seed = 0;
  int max_restarts = 1000;        // outer connectivity/triangle loop
  int block_restarts = 100000;    // per bipartite block

  void validate() const;
};

/// Random bipartite d-regular graph between two equally sized vertex sets.
/// Vertices of part_a are visited in order; each picks d distinct partners
/// uniformly among the vertices of part_b whose degree is still below d. A dead
/// end restarts the whole block.
std::vector<Edge> generate_bipartite_regular(std::span<const int> part_a,
                                             std::span<const int> part_b, int d,
                                             Rng &rng, int max_restarts = 100000);

/// Union of three random bipartite d-regular blocks over the canonical
/// partition V_r = {r n/3, ..., (r+1) n/3 - 1}, redrawn until the result is
/// connected and contains a triangle. Tagged with kEnsembleTag.
Graph generate_ensemble_graph(const EnsembleConfig &config);

bool is_connected(const Graph &g);
bool contains_triangle(const Graph &g);

/// Maximum k-cut of an ensemble graph (3-colorable by construction): |E|.
/// Throws std::invalid_argument for graphs without the ensemble tag.
long known_max_cut(const Graph &g);

/// Number of edges whose endpoints receive different colors.
long cut_value(const Graph &g, std::span<const int> colors);

} // namespace kcut
