#include "kcut/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace kcut {

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges, std::vector<std::string> tags)
    : n_(n), edges_(std::move(edges)), adjacency_(std::max(n, 0)), tags_(std::move(tags)) {
  if (n < 0)
    throw std::invalid_argument("Graph: negative vertex count");
  for (Edge &e : edges_) {
    if (e.u > e.v)
      std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n)
      throw std::invalid_argument("Graph: edge endpoint out of range");
    if (e.u == e.v)
      throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(e.u));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("Graph: duplicate edge");
  for (const Edge &e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto &nbrs : adjacency_)
    std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int u, int v) const {
  const auto &nbrs = adjacency_.at(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool Graph::has_tag(std::string_view tag) const {
  return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
}

void EnsembleConfig::validate() const {
  std::ostringstream err;
  if (n < 3 || n % 3 != 0)
    err << "n must be a positive multiple of 3 (got " << n << "); ";
  if (d < 1)
    err << "d must be positive (got " << d << "); ";
  if (3 * d > n)
    err << "per-block degree d=" << d << " exceeds part size n/3=" << n / 3 << "; ";
  if (max_restarts < 1 || block_restarts < 1)
    err << "restart budgets must be positive; ";
  if (!err.str().empty())
    throw std::invalid_argument("EnsembleConfig: " + err.str());
}

std::vector<Edge> generate_bipartite_regular(std::span<const int> part_a,
                                             std::span<const int> part_b, int d,
                                             Rng &rng, int max_restarts) {
  if (part_a.size() != part_b.size())
    throw std::invalid_argument("generate_bipartite_regular: parts differ in size");
  if (d < 0 || static_cast<std::size_t>(d) > part_b.size())
    throw std::invalid_argument("generate_bipartite_regular: d exceeds part size");

  std::vector<Edge> edges;
  std::vector<int> degree_b(part_b.size());
  std::vector<std::size_t> candidates;
  edges.reserve(part_a.size() * d);

  for (int attempt = 0; attempt < max_restarts; ++attempt) {
    edges.clear();
    std::fill(degree_b.begin(), degree_b.end(), 0);
    bool dead_end = false;
    for (int a : part_a) {
      candidates.clear();
      for (std::size_t s = 0; s < part_b.size(); ++s)
        if (degree_b[s] < d)
          candidates.push_back(s);
      if (candidates.size() < static_cast<std::size_t>(d)) {
        dead_end = true;
        break;
      }
      // Partial Fisher-Yates: the first d entries are a uniform d-subset.
      for (int t = 0; t < d; ++t) {
        std::uniform_int_distribution<std::size_t> pick(t, candidates.size() - 1);
        std::swap(candidates[t], candidates[pick(rng)]);
        const std::size_t s = candidates[t];
        ++degree_b[s];
        edges.push_back({a, part_b[s]});
      }
    }
    if (!dead_end)
      return edges;
  }
  std::ostringstream msg;
  msg << "bipartite generation failed after " << max_restarts << " restarts (parts "
      << part_a.size() << ":" << part_b.size() << ", d=" << d << ")";
  throw GenerationError(msg.str());
}

Graph generate_ensemble_graph(const EnsembleConfig &config) {
  config.validate();
  const int part = config.n / 3;
  std::vector<std::vector<int>> parts(3);
  for (int r = 0; r < 3; ++r) {
    parts[r].resize(part);
    std::iota(parts[r].begin(), parts[r].end(), r * part);
  }

  Rng rng(config.seed);
  for (int attempt = 0; attempt < config.max_restarts; ++attempt) {
    std::vector<Edge> edges;
    for (int r = 0; r < 3; ++r)
      for (int s = r + 1; s < 3; ++s) {
        auto block = generate_bipartite_regular(parts[r], parts[s], config.d, rng,
                                                config.block_restarts);
        edges.insert(edges.end(), block.begin(), block.end());
      }
    Graph g(config.n, std::move(edges),
            {std::string(kEnsembleTag),
             "G[" + std::to_string(config.d) + "," + std::to_string(config.n) + "]"});
    if (contains_triangle(g) && is_connected(g))
      return g;
  }
  std::ostringstream msg;
  msg << "ensemble generation failed after " << config.max_restarts
      << " restarts (n=" << config.n << ", d=" << config.d << ")";
  throw GenerationError(msg.str());
}

bool is_connected(const Graph &g) {
  const int n = g.num_vertices();
  if (n <= 1)
    return true;
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int visited = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        frontier.push(w);
      }
  }
  return visited == n;
}

bool contains_triangle(const Graph &g) {
  for (const Edge &e : g.edges()) {
    const auto &a = g.neighbors(e.u);
    const auto &b = g.neighbors(e.v);
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (*ia == *ib)
        return true;
      if (*ia < *ib)
        ++ia;
      else
        ++ib;
    }
  }
  return false;
}

long known_max_cut(const Graph &g) {
  if (!g.has_tag(kEnsembleTag))
    throw std::invalid_argument(
        "known_max_cut: graph is not from the 3-partite ensemble; use exact_max_kcut");
  return static_cast<long>(g.num_edges());
}

long cut_value(const Graph &g, std::span<const int> colors) {
  if (colors.size() < static_cast<std::size_t>(g.num_vertices()))
    throw std::invalid_argument("cut_value: coloring shorter than vertex count");
  long cut = 0;
  for (const Edge &e : g.edges())
    cut += colors[e.u] != colors[e.v];
  return cut;
}

} // namespace kcut
