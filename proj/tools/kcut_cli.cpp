#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcut/angle_optimizer.hpp"
#include "kcut/baselines.hpp"
#include "kcut/experiments.hpp"
#include "kcut/graph.hpp"
#include "kcut/io.hpp"
#include "kcut/oracle.hpp"
#include "kcut/rqaoa.hpp"

using namespace kcut;
using nlohmann::json;

namespace {

void emit(const json &j, const std::string &out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json(out, j);
}

json angles_json(const Angles &a) { return {{"beta", a.beta}, {"gamma", a.gamma}}; }

// Best known denominator for approximation ratios: |E| for ensemble graphs,
// exhaustive search when it is cheap, otherwise none.
std::optional<double> reference_max(const Problem &p) {
  if (p.graph && p.graph->has_tag(kEnsembleTag))
    return static_cast<double>(known_max_cut(*p.graph));
  try {
    return exact_max_kcut(p.hamiltonian, p.hamiltonian.k()).value;
  } catch (const std::length_error &) {
    return std::nullopt;
  }
}

Graph load_graph(const std::string &path) {
  Problem p = load_problem(path, 3);
  if (!p.graph)
    throw FormatError(path + ": expected a graph file");
  return *p.graph;
}

int cmd_generate(int n, int d, int count, std::uint64_t seed, const std::string &dir) {
  std::filesystem::create_directories(dir);
  json graphs = json::array();
  for (int i = 0; i < count; ++i) {
    EnsembleConfig c;
    c.n = n;
    c.d = d;
    c.seed = graph_seed(seed, n, d, i);
    const Graph g = generate_ensemble_graph(c);
    char name[64];
    std::snprintf(name, sizeof name, "graph_n%d_d%d_%02d.json", n, d, i);
    write_json(std::filesystem::path(dir) / name, to_json(g));
    graphs.push_back({{"file", name}, {"index", i}, {"seed", c.seed}, {"edges", g.num_edges()}});
  }
  write_json(std::filesystem::path(dir) / "manifest.json",
             {{"n", n}, {"d", d}, {"master_seed", seed}, {"graphs", graphs}});
  std::cout << "wrote " << count << " graphs to " << dir << '\n';
  return 0;
}

int cmd_optimize(const std::string &file, int k, int grid, const std::string &out) {
  const Problem p = load_problem(file, k);
  OptimizerOptions opts;
  opts.grid_points = grid;
  const auto r = optimize_angles(p.hamiltonian, opts);
  json trace = json::array();
  for (const auto &pt : r.trace)
    trace.push_back({{"gamma", pt.gamma}, {"energy", pt.energy}, {"beta", pt.beta}});
  emit({{"angles", angles_json(r.angles)},
        {"energy", r.energy},
        {"heuristic", r.heuristic},
        {"trace", trace}},
       out);
  return 0;
}

int cmd_rqaoa(const std::string &file, int k, int cutoff, std::uint64_t seed,
              const std::string &out) {
  const Problem p = load_problem(file, k);
  RqaoaOptions opts;
  opts.cutoff = cutoff;
  OptimizerOptions oo;
  oo.seed = seed;
  opts.optimizer = [oo](const CostHamiltonian &h) { return optimize_angles(h, oo); };
  const auto r = run_rqaoa(p.hamiltonian, opts);

  json trail = json::array();
  for (const auto &rec : r.trail)
    trail.push_back({{"eliminated", rec.eliminated},
                     {"survivor", rec.survivor},
                     {"shift", rec.shift},
                     {"correlation", rec.correlation}});
  json result = {{"coloring", r.x}, {"value", r.value}, {"trail", trail}};
  if (auto ref = reference_max(p))
    result["ratio"] = r.value / *ref;
  emit(result, out);
  return 0;
}

int cmd_oracle(const std::string &file, int k, const std::vector<double> &angles) {
  const Problem p = load_problem(file, k);
  const auto &H = p.hamiltonian;
  Angles a;
  if (angles.empty()) {
    a = optimize_angles(H).angles;
  } else {
    if (static_cast<int>(angles.size()) != H.k() + 1)
      throw CLI::ValidationError("--angles", "expects k betas followed by gamma");
    a.beta.assign(angles.begin(), angles.end() - 1);
    a.gamma = angles.back();
  }
  const double engine = energy(H, a);
  const double exact = statevector_energy(H, statevector_qaoa1(H, a));
  json result = {{"angles", angles_json(a)},
                 {"engine_energy", engine},
                 {"statevector_energy", exact},
                 {"difference", engine - exact}};
  try {
    const auto best = exact_max_kcut(H, H.k());
    result["max_value"] = best.value;
    result["max_coloring"] = best.x;
  } catch (const std::length_error &) {
  }
  emit(result, "");
  return 0;
}

int cmd_newman(const std::string &file, int k, int samples, std::uint64_t seed,
               const std::string &out) {
  const Graph g = load_graph(file);
  k = k == 0 ? 3 : k;
  SdpOptions so;
  so.seed = derive_seed(seed, {2});
  const auto s = newman_best_of(g, k, samples, seed, so);
  json result = {{"best", s.best},
                 {"mean", s.mean},
                 {"std", s.std},
                 {"values", s.values},
                 {"best_coloring", s.best_coloring},
                 {"sdp",
                  {{"objective", s.sdp.objective},
                   {"converged", s.sdp.converged},
                   {"iterations", s.sdp.iterations},
                   {"max_violation", s.sdp.max_violation}}}};
  if (g.has_tag(kEnsembleTag))
    result["best_ratio"] = s.best / known_max_cut(g);
  emit(result, out);
  return 0;
}

int cmd_experiment(const std::string &config_file, const std::string &output_dir) {
  ExperimentConfig config = ExperimentConfig::from_json(read_json(config_file));
  if (!output_dir.empty())
    config.output_dir = output_dir;
  const auto result = run_experiment(config);
  std::cout << summary_markdown(summarize(result.rows));
  std::cout << "results written to " << config.output_dir << '\n';
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Level-1 QAOA / RQAOA for MAX-k-CUT"};
  app.require_subcommand(1);

  int n = 30, d = 4, count = 20, k = 0, grid = 50, cutoff = 9, samples = 100;
  std::uint64_t seed = 2021;
  std::string out, file, config_file, output_dir;
  std::vector<double> angles;

  auto *gen = app.add_subcommand("generate", "Sample ensemble graphs");
  gen->add_option("--n", n, "Vertex count (multiple of 3)")->required();
  gen->add_option("--d", d, "Degree inside each bipartite block")->required();
  gen->add_option("--count", count, "Number of graphs");
  gen->add_option("--seed", seed, "Master seed");
  gen->add_option("--out", out, "Output directory")->required();

  auto *opt = app.add_subcommand("optimize", "Optimize level-1 angles");
  opt->add_option("--hamiltonian,--graph", file, "Hamiltonian or graph JSON")->required();
  opt->add_option("--k", k, "Colors (default 3 for graphs, taken from Hamiltonian files)");
  opt->add_option("--grid", grid, "Gamma grid points per stage");
  opt->add_option("--out", out, "Result JSON (stdout if omitted)");

  auto *rq = app.add_subcommand("rqaoa", "Run level-1 RQAOA");
  rq->add_option("--graph,--hamiltonian", file, "Graph or Hamiltonian JSON")->required();
  rq->add_option("--k", k, "Colors");
  rq->add_option("--cutoff", cutoff, "Brute-force below this many qudits");
  rq->add_option("--seed", seed, "Seed for the k != 3 angle search");
  rq->add_option("--out", out, "Result JSON (stdout if omitted)");

  auto *orc = app.add_subcommand("oracle", "Compare engine and state-vector energies");
  orc->add_option("--graph,--hamiltonian", file, "Graph or Hamiltonian JSON")->required();
  orc->add_option("--k", k, "Colors");
  orc->add_option("--angles", angles, "beta_0 ... beta_{k-1} gamma")->delimiter(',');

  auto *nm = app.add_subcommand("newman", "SDP relaxation with sector rounding");
  nm->add_option("--graph", file, "Graph JSON")->required();
  nm->add_option("--k", k, "Colors");
  nm->add_option("--samples", samples, "Number of roundings");
  nm->add_option("--seed", seed, "Rounding seed");
  nm->add_option("--out", out, "Result JSON (stdout if omitted)");

  auto *ex = app.add_subcommand("experiment", "Run the ensemble sweep");
  ex->add_option("--config", config_file, "Experiment config JSON")->required();
  ex->add_option("--output-dir", output_dir, "Override config.output_dir");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen)
      return cmd_generate(n, d, count, seed, out);
    if (*opt)
      return cmd_optimize(file, k, grid, out);
    if (*rq)
      return cmd_rqaoa(file, k, cutoff, seed, out);
    if (*orc)
      return cmd_oracle(file, k, angles);
    if (*nm)
      return cmd_newman(file, k, samples, seed, out);
    if (*ex)
      return cmd_experiment(config_file, output_dir);
  } catch (const CLI::Error &e) {
    return app.exit(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
