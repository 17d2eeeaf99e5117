#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace kcut {

struct ExperimentConfig {
  std::vector<int> n_list{30, 60, 150, 300};
  std::vector<int> d_list{4, 6, 8, 10};
  int graphs_per_cell = 20;
  int k = 3;
  int newman_samples = 100;
  int cutoff = 9;
  int random_draws = 1000;
  std::uint64_t seed = 2021;
  double time_budget_seconds = 600.0;
  std::filesystem::path output_dir = "results";

  void validate() const;
  static ExperimentConfig from_json(const nlohmann::json &j);
  nlohmann::json to_json() const;
};

struct ExperimentRow {
  std::string graph_id;
  int n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  // Ratios and angles stay NaN until the stage that computes them succeeds.
  double qaoa1_ratio = std::numeric_limits<double>::quiet_NaN();
  double rqaoa1_ratio = std::numeric_limits<double>::quiet_NaN();
  double newman_best_ratio = std::numeric_limits<double>::quiet_NaN();
  double newman_mean_ratio = std::numeric_limits<double>::quiet_NaN();
  double newman_std_ratio = std::numeric_limits<double>::quiet_NaN();
  double random_mean_ratio = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> beta;
  double gamma = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
  // Not part of the CSV.
  double seconds_graph = 0.0, seconds_qaoa = 0.0, seconds_rqaoa = 0.0,
         seconds_newman = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
};

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr const char *kCsvHeader =
    "graph_id,n,d,seed,qaoa1_ratio,rqaoa1_ratio,newman_best_ratio,newman_mean_ratio,"
    "newman_std_ratio,random_mean_ratio,beta0,beta1,beta2,gamma,status";

/// Seed of graph `index` in cell (n, d).
std::uint64_t graph_seed(std::uint64_t master, int n, int d, int index);

/// Runs every algorithm on one ensemble graph. Failures are recorded in the
/// status column instead of thrown.
ExperimentRow run_single_graph(const ExperimentConfig &config, int n, int d, int index);

/// Full grid. When `write_files` is set, results.csv rows are appended as soon
/// as the graph and all graphs before it finish, and manifest.json,
/// timings.csv and summary.{json,md} are written under config.output_dir.
ExperimentResult run_experiment(const ExperimentConfig &config, bool write_files = true);

std::string csv_line(const ExperimentRow &row);
std::vector<ExperimentRow> read_results_csv(const std::filesystem::path &path);

struct ColumnStats {
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct CellSummary {
  int n = 0;
  int d = 0;
  int graphs = 0;
  int failed = 0;
  ColumnStats qaoa1, rqaoa1, newman_best, newman_mean, random_mean;
};

/// Per-(n,d) statistics over rows with status "ok". std is the sample standard
/// deviation (0 for a single row).
std::vector<CellSummary> summarize(const std::vector<ExperimentRow> &rows);
nlohmann::json summary_json(const std::vector<CellSummary> &cells);
std::string summary_markdown(const std::vector<CellSummary> &cells);

} // namespace kcut
