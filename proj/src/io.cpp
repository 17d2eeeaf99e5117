#include "kcut/io.hpp"

#include <fstream>

namespace kcut {

using nlohmann::json;

json to_json(const Graph &g) {
  json edges = json::array();
  for (const Edge &e : g.edges())
    edges.push_back({e.u, e.v});
  return {{"n", g.num_vertices()}, {"edges", edges}, {"tags", g.tags()}};
}

json to_json(const CostHamiltonian &H) {
  json couplings = json::array();
  for (const auto &[key, J] : H.couplings())
    couplings.push_back({{"i", key.first}, {"j", key.second}, {"J", J}});
  json out = {{"k", H.k()}, {"n", H.n()}, {"offset", H.offset()}, {"couplings", couplings}};
  if (H.num_active() != H.n())
    out["active"] = H.active_qudits();
  return out;
}

Graph graph_from_json(const json &j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto &e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw FormatError("graph edge must be a pair [i, j]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    std::vector<std::string> tags;
    if (j.contains("tags"))
      tags = j.at("tags").get<std::vector<std::string>>();
    return Graph(n, std::move(edges), std::move(tags));
  } catch (const json::exception &e) {
    throw FormatError(std::string("graph JSON: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw FormatError(std::string("graph JSON: ") + e.what());
  }
}

CostHamiltonian hamiltonian_from_json(const json &j) {
  try {
    CostHamiltonian H(j.at("k").get<int>(), j.at("n").get<int>());
    H.add_offset(j.value("offset", 0.0));
    for (const auto &c : j.at("couplings")) {
      const auto table = c.at("J").get<std::vector<double>>();
      H.add_coupling(c.at("i").get<int>(), c.at("j").get<int>(), table);
    }
    if (j.contains("active")) {
      std::vector<bool> keep(H.n(), false);
      for (int q : j.at("active").get<std::vector<int>>())
        keep.at(q) = true;
      for (int q = 0; q < H.n(); ++q)
        if (!keep[q])
          H.deactivate(q);
    }
    return H;
  } catch (const json::exception &e) {
    throw FormatError(std::string("Hamiltonian JSON: ") + e.what());
  } catch (const std::logic_error &e) {
    throw FormatError(std::string("Hamiltonian JSON: ") + e.what());
  }
}

json read_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path &path, const json &j) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Problem load_problem(const std::filesystem::path &path, int k) {
  const json j = read_json(path);
  if (j.contains("couplings")) {
    CostHamiltonian H = hamiltonian_from_json(j);
    if (k != 0 && H.k() != k)
      throw FormatError(path.string() + ": Hamiltonian has k=" + std::to_string(H.k()) +
                        " but k=" + std::to_string(k) + " was requested");
    return {std::move(H), std::nullopt};
  }
  Graph g = graph_from_json(j);
  return {CostHamiltonian::from_graph(g, k == 0 ? 3 : k), std::move(g)};
}

} // namespace kcut
