#include "kcut/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "kcut/angle_optimizer.hpp"
#include "kcut/baselines.hpp"
#include "kcut/graph.hpp"
#include "kcut/hamiltonian.hpp"
#include "kcut/io.hpp"
#include "kcut/rng.hpp"
#include "kcut/rqaoa.hpp"

namespace kcut {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string &s) {
  if (s.empty() || s == "nan" || s == "-nan")
    return kNaN;
  return std::stod(s);
}

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

std::string sanitize(std::string s) {
  for (char &c : s)
    if (c == ',' || c == '\n' || c == '\r')
      c = ';';
  return s;
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ColumnStats column_stats(const std::vector<double> &values) {
  ColumnStats s;
  if (values.empty()) {
    s.mean = s.std = s.min = s.max = kNaN;
    return s;
  }
  s.min = s.max = values.front();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / values.size();
  double sq = 0.0;
  for (double v : values)
    sq += (v - s.mean) * (v - s.mean);
  s.std = values.size() > 1 ? std::sqrt(sq / (values.size() - 1)) : 0.0;
  return s;
}

json stats_json(const ColumnStats &s) {
  return {{"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"max", s.max}};
}

} // namespace

void ExperimentConfig::validate() const {
  auto positive = [](const std::vector<int> &v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](int x) { return x > 0; });
  };
  if (!positive(n_list) || !positive(d_list))
    throw std::invalid_argument("ExperimentConfig: n_list and d_list must be non-empty and positive");
  if (graphs_per_cell < 1 || newman_samples < 1 || cutoff < 1 || random_draws < 1)
    throw std::invalid_argument("ExperimentConfig: counts must be positive");
  if (k < 2)
    throw std::invalid_argument("ExperimentConfig: k must be at least 2");
  if (!(time_budget_seconds > 0.0))
    throw std::invalid_argument("ExperimentConfig: time budget must be positive");
}

ExperimentConfig ExperimentConfig::from_json(const json &j) {
  ExperimentConfig c;
  c.n_list = j.value("n_list", c.n_list);
  c.d_list = j.value("d_list", c.d_list);
  c.graphs_per_cell = j.value("graphs_per_cell", c.graphs_per_cell);
  c.k = j.value("k", c.k);
  c.newman_samples = j.value("newman_samples", c.newman_samples);
  c.cutoff = j.value("cutoff", c.cutoff);
  c.random_draws = j.value("random_draws", c.random_draws);
  c.seed = j.value("seed", c.seed);
  c.time_budget_seconds = j.value("time_budget_seconds", c.time_budget_seconds);
  c.output_dir = j.value("output_dir", c.output_dir.string());
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  return {{"n_list", n_list},
          {"d_list", d_list},
          {"graphs_per_cell", graphs_per_cell},
          {"k", k},
          {"newman_samples", newman_samples},
          {"cutoff", cutoff},
          {"random_draws", random_draws},
          {"seed", seed},
          {"time_budget_seconds", time_budget_seconds},
          {"output_dir", output_dir.string()}};
}

std::uint64_t graph_seed(std::uint64_t master, int n, int d, int index) {
  return derive_seed(master, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d),
                              static_cast<std::uint64_t>(index)});
}

ExperimentRow run_single_graph(const ExperimentConfig &config, int n, int d, int index) {
  ExperimentRow row;
  char id[64];
  std::snprintf(id, sizeof id, "n%d_d%d_g%02d", n, d, index);
  row.graph_id = id;
  row.n = n;
  row.d = d;
  row.seed = graph_seed(config.seed, n, d, index);

  const Stopwatch total;
  auto out_of_time = [&] { return total.seconds() > config.time_budget_seconds; };
  try {
    Stopwatch clock;
    EnsembleConfig ec;
    ec.n = n;
    ec.d = d;
    ec.seed = row.seed;
    const Graph g = generate_ensemble_graph(ec);
    const double c_max = static_cast<double>(known_max_cut(g));
    const CostHamiltonian H = CostHamiltonian::from_graph(g, config.k);
    row.seconds_graph = clock.seconds();

    clock = Stopwatch();
    const OptimizeResult qaoa = optimize_angles(H);
    row.qaoa1_ratio = qaoa.energy / c_max;
    row.beta = qaoa.angles.beta;
    row.gamma = qaoa.angles.gamma;
    row.seconds_qaoa = clock.seconds();
    if (out_of_time()) {
      row.status = "timeout";
      return row;
    }

    clock = Stopwatch();
    RqaoaOptions ro;
    ro.cutoff = config.cutoff;
    const RqaoaResult rq = run_rqaoa(H, ro);
    const double check = static_cast<double>(cut_value(g, rq.x));
    if (check != rq.value)
      throw std::logic_error("RQAOA value does not match the cut of its coloring");
    row.rqaoa1_ratio = rq.value / c_max;
    row.seconds_rqaoa = clock.seconds();
    if (out_of_time()) {
      row.status = "timeout";
      return row;
    }

    clock = Stopwatch();
    SdpOptions so;
    so.seed = derive_seed(row.seed, {2});
    const NewmanStats ns =
        newman_best_of(g, config.k, config.newman_samples, derive_seed(row.seed, {1}), so);
    row.newman_best_ratio = ns.best / c_max;
    row.newman_mean_ratio = ns.mean / c_max;
    row.newman_std_ratio = ns.std / c_max;
    row.seconds_newman = clock.seconds();

    Rng rng(derive_seed(row.seed, {3}));
    double sum = 0.0;
    for (int t = 0; t < config.random_draws; ++t)
      sum += static_cast<double>(cut_value(g, random_coloring(g, config.k, rng)));
    row.random_mean_ratio = sum / config.random_draws / c_max;
    if (out_of_time())
      row.status = "timeout";
  } catch (const std::exception &e) {
    row.status = "error: " + sanitize(e.what());
  }
  return row;
}

std::string csv_line(const ExperimentRow &row) {
  std::ostringstream out;
  out << row.graph_id << ',' << row.n << ',' << row.d << ',' << row.seed << ','
      << format_double(row.qaoa1_ratio) << ',' << format_double(row.rqaoa1_ratio) << ','
      << format_double(row.newman_best_ratio) << ',' << format_double(row.newman_mean_ratio)
      << ',' << format_double(row.newman_std_ratio) << ','
      << format_double(row.random_mean_ratio);
  // Blank marks a color the instance does not have; nan marks angles that
  // were never computed.
  for (std::size_t a = 0; a < 3; ++a) {
    out << ',';
    if (row.beta.empty())
      out << "nan";
    else if (a < row.beta.size())
      out << format_double(row.beta[a]);
  }
  out << ',' << format_double(row.gamma) << ',' << sanitize(row.status);
  return out.str();
}

std::vector<ExperimentRow> read_results_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      line != "# schema_version=" + std::to_string(kCsvSchemaVersion))
    throw FormatError(path.string() + ": missing or unsupported schema_version line");
  if (!std::getline(in, line) || line != kCsvHeader)
    throw FormatError(path.string() + ": unexpected column header");

  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto f = split_csv(line);
    if (f.size() != 15)
      throw FormatError(path.string() + ": row has " + std::to_string(f.size()) +
                        " fields, expected 15");
    ExperimentRow r;
    r.graph_id = f[0];
    r.n = std::stoi(f[1]);
    r.d = std::stoi(f[2]);
    r.seed = std::stoull(f[3]);
    r.qaoa1_ratio = parse_double(f[4]);
    r.rqaoa1_ratio = parse_double(f[5]);
    r.newman_best_ratio = parse_double(f[6]);
    r.newman_mean_ratio = parse_double(f[7]);
    r.newman_std_ratio = parse_double(f[8]);
    r.random_mean_ratio = parse_double(f[9]);
    for (int a = 10; a < 13; ++a)
      if (!f[a].empty())
        r.beta.push_back(parse_double(f[a]));
    if (std::all_of(r.beta.begin(), r.beta.end(), [](double b) { return std::isnan(b); }))
      r.beta.clear();
    r.gamma = parse_double(f[13]);
    r.status = f[14];
    rows.push_back(std::move(r));
  }
  return rows;
}

ExperimentResult run_experiment(const ExperimentConfig &config, bool write_files) {
  config.validate();
  struct Job {
    int n, d, index;
  };
  std::vector<Job> jobs;
  for (int n : config.n_list)
    for (int d : config.d_list)
      for (int i = 0; i < config.graphs_per_cell; ++i)
        jobs.push_back({n, d, i});

  const auto dir = config.output_dir;
  std::ofstream csv;
  if (write_files) {
    std::filesystem::create_directories(dir);
    json graphs = json::array();
    for (const Job &job : jobs)
      graphs.push_back({{"n", job.n},
                        {"d", job.d},
                        {"index", job.index},
                        {"seed", graph_seed(config.seed, job.n, job.d, job.index)}});
    write_json(dir / "manifest.json",
               {{"schema_version", kCsvSchemaVersion},
                {"master_seed", config.seed},
                {"seed_derivation", "derive_seed(master_seed, {n, d, index}) (splitmix64)"},
                {"config", config.to_json()},
                {"graphs", graphs}});
    csv.open(dir / "results.csv", std::ios::trunc);
    if (!csv)
      throw std::runtime_error("cannot write " + (dir / "results.csv").string());
    csv << "# schema_version=" << kCsvSchemaVersion << '\n' << kCsvHeader << '\n';
    csv.flush();
  }

  std::vector<std::optional<ExperimentRow>> done(jobs.size());
  std::size_t flushed = 0;
  std::mutex writer;
  const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long j = 0; j < count; ++j) {
    ExperimentRow row = run_single_graph(config, jobs[j].n, jobs[j].d, jobs[j].index);
    std::lock_guard lock(writer);
    done[j] = std::move(row);
    // Rows go out in grid order so reruns produce identical files.
    while (flushed < done.size() && done[flushed]) {
      if (write_files) {
        csv << csv_line(*done[flushed]) << '\n';
        csv.flush();
      }
      ++flushed;
    }
  }

  ExperimentResult result{config, {}};
  for (auto &row : done)
    result.rows.push_back(std::move(*row));

  if (write_files) {
    std::ofstream timings(dir / "timings.csv", std::ios::trunc);
    timings << "graph_id,seconds_graph,seconds_qaoa,seconds_rqaoa,seconds_newman\n";
    for (const auto &r : result.rows)
      timings << r.graph_id << ',' << r.seconds_graph << ',' << r.seconds_qaoa << ','
              << r.seconds_rqaoa << ',' << r.seconds_newman << '\n';
    const auto cells = summarize(result.rows);
    write_json(dir / "summary.json", summary_json(cells));
    std::ofstream md(dir / "summary.md", std::ios::trunc);
    md << summary_markdown(cells);
  }
  return result;
}

std::vector<CellSummary> summarize(const std::vector<ExperimentRow> &rows) {
  std::vector<CellSummary> cells;
  std::map<std::pair<int, int>, std::size_t> index;
  struct Columns {
    std::vector<double> qaoa1, rqaoa1, newman_best, newman_mean, random_mean;
  };
  std::vector<Columns> columns;
  for (const auto &r : rows) {
    auto [it, inserted] = index.try_emplace({r.n, r.d}, cells.size());
    if (inserted) {
      cells.push_back({});
      cells.back().n = r.n;
      cells.back().d = r.d;
      columns.emplace_back();
    }
    CellSummary &cell = cells[it->second];
    ++cell.graphs;
    if (r.status != "ok") {
      ++cell.failed;
      continue;
    }
    Columns &c = columns[it->second];
    c.qaoa1.push_back(r.qaoa1_ratio);
    c.rqaoa1.push_back(r.rqaoa1_ratio);
    c.newman_best.push_back(r.newman_best_ratio);
    c.newman_mean.push_back(r.newman_mean_ratio);
    c.random_mean.push_back(r.random_mean_ratio);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i].qaoa1 = column_stats(columns[i].qaoa1);
    cells[i].rqaoa1 = column_stats(columns[i].rqaoa1);
    cells[i].newman_best = column_stats(columns[i].newman_best);
    cells[i].newman_mean = column_stats(columns[i].newman_mean);
    cells[i].random_mean = column_stats(columns[i].random_mean);
  }
  return cells;
}

json summary_json(const std::vector<CellSummary> &cells) {
  json out = json::array();
  for (const auto &c : cells)
    out.push_back({{"n", c.n},
                   {"d", c.d},
                   {"graphs", c.graphs},
                   {"failed", c.failed},
                   {"qaoa1_ratio", stats_json(c.qaoa1)},
                   {"rqaoa1_ratio", stats_json(c.rqaoa1)},
                   {"newman_best_ratio", stats_json(c.newman_best)},
                   {"newman_mean_ratio", stats_json(c.newman_mean)},
                   {"random_mean_ratio", stats_json(c.random_mean)}});
  return out;
}

std::string summary_markdown(const std::vector<CellSummary> &cells) {
  std::ostringstream md;
  md << "| n | d | graphs | failed | QAOA1 | RQAOA1 | Newman best | Newman mean | random |\n"
     << "|---|---|---|---|---|---|---|---|---|\n";
  auto cell = [](const ColumnStats &s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f ± %.4f", s.mean, s.std);
    return std::string(buf);
  };
  for (const auto &c : cells)
    md << "| " << c.n << " | " << c.d << " | " << c.graphs << " | " << c.failed << " | "
       << cell(c.qaoa1) << " | " << cell(c.rqaoa1) << " | " << cell(c.newman_best) << " | "
       << cell(c.newman_mean) << " | " << cell(c.random_mean) << " |\n";
  return md.str();
}

} // namespace kcut
