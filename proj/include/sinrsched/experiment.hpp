#pragma once

// Experiment orchestration: per run, generate a scenario and evaluate every
// requested algorithm on it; emit one CSV row per (run, algorithm) plus a
// plot-ready summary.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sinrsched/scenario.hpp"

namespace sinrsched {

struct ResultRow {
  int run_id = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  int n = 0;
  std::optional<double> throughput;
  std::optional<double> lp_bound;
  std::optional<double> opt;
  std::optional<double> delta_ratio;  // ΔA / Â
  int uncovered = 0;
  std::optional<int> slots_used;
  double wall_ms = 0.0;
  std::string status = "ok";

  bool operator==(const ResultRow&) const = default;
};

struct SummaryRow {
  std::string algorithm;
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
  int samples = 0;
};

/// Header of the results file, in ResultRow field order.
inline constexpr const char* kResultHeader =
    "run_id,seed,algorithm,n,throughput,lp_bound,opt,delta_ratio,uncovered,slots_used,wall_ms,status";

/// Per-run seed: splitmix64 of (master_seed + run_id).
std::uint64_t run_seed(std::uint64_t master_seed, int run_id);

/// Rows ordered by (run id, position of the algorithm in config.algorithms),
/// whatever order worker threads finish in.
std::vector<ResultRow> run_experiment(const ScenarioConfig& config);

/// Mean/stddev of throughput per (algorithm, n), in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

void write_results(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_results(std::istream& in);
void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out);

/// `<stem>.summary.csv` next to the results file.
std::filesystem::path summary_path(const std::filesystem::path& results);

/// Writes the results file and the summary alongside it.
void emit_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

}  // namespace sinrsched
