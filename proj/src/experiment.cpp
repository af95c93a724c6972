#include "sinrsched/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sinrsched/baselines.hpp"
#include "sinrsched/centralized.hpp"
#include "sinrsched/distributed.hpp"
#include "sinrsched/lp.hpp"

namespace sinrsched {

std::uint64_t run_seed(std::uint64_t master_seed, int run_id) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(run_id) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Lazily solved LP shared by the rows of one run.
struct LpCache {
  const NetworkInstance& inst;
  int frame;
  std::optional<LpOutcome> outcome;

  const LpOutcome& get() {
    if (!outcome) outcome = solve_lp(build_lp(inst, frame));
    return *outcome;
  }
};

ResultRow evaluate(const ScenarioConfig& cfg, const NetworkInstance& inst, LpCache& lp,
                   const std::string& algo, ResultRow row) {
  const int T = cfg.frame_length;
  if (algo == "lp-bound" || algo == "app") {
    const LpOutcome& res = lp.get();
    if (res.status != LpStatus::Optimal) {
      row.status = "lp_infeasible";
      return row;
    }
    const double a_hat = res.solution.objective;
    row.lp_bound = a_hat;
    if (algo == "lp-bound") {
      row.throughput = a_hat;
      return row;
    }
    const RoundingOutcome out = round_and_repair(inst, res.solution, row.seed);
    row.throughput = throughput(inst, out.schedule);
    row.delta_ratio = a_hat > 0.0 ? out.delta_a / a_hat : 0.0;
    row.uncovered = static_cast<int>(out.uncovered.size());
    if (!out.uncovered.empty()) row.status = "incomplete";
    return row;
  }
  if (algo == "opt") {
    try {
      const ExactResult ex = exhaustive_opt(inst, T, cfg.exhaustive);
      if (!ex.feasible) {
        row.status = "infeasible";
        return row;
      }
      row.opt = ex.optimum;
      row.throughput = ex.optimum;
      const LpOutcome& res = lp.get();
      if (res.status == LpStatus::Optimal) row.lp_bound = res.solution.objective;
    } catch (const SizeGuardError&) {
      row.status = "size_guard";
    }
    return row;
  }
  if (algo == "pm" || algo == "pg" || algo == "pcg") {
    const BaselineResult b = algo == "pm"   ? pm_schedule(inst, cfg.interference_range, T)
                             : algo == "pg" ? pg_schedule(inst, T)
                                            : pcg_schedule(inst, T);
    row.throughput = effective_throughput(inst, b.schedule);
    row.uncovered = static_cast<int>(b.uncovered.size());
    if (!b.uncovered.empty()) row.status = "incomplete";
    return row;
  }
  if (algo == "distributed") {
    const ProtocolParams params = make_protocol_params(inst, cfg.mini_slots);
    const double cap = static_cast<double>(inst.link_count()) * theorem3_bound(inst, params);
    SimOptions opt;
    opt.max_slots = static_cast<int>(std::min<double>(std::ceil(cap), cfg.max_distributed_slots));
    opt.min_slots = T;
    const SimTrace trace = run_distributed(inst, params, opt, row.seed);
    row.throughput = delivered_throughput(inst, trace, T);
    row.slots_used = trace.slots_used;
    row.uncovered = static_cast<int>(
        std::count(trace.first_scheduled.begin(), trace.first_scheduled.end(), 0));
    if (!trace.complete) row.status = "incomplete";
    return row;
  }
  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

ResultRow blank_row(int run_id, std::uint64_t seed, const std::string& algo, int n) {
  ResultRow row;
  row.run_id = run_id;
  row.seed = seed;
  row.algorithm = algo;
  row.n = n;
  return row;
}

std::vector<ResultRow> evaluate_run(const ScenarioConfig& cfg, int run_id) {
  const std::uint64_t seed = run_seed(cfg.master_seed, run_id);
  std::vector<ResultRow> rows;
  NetworkInstance inst;
  try {
    inst = generate_scenario(cfg, seed);
  } catch (const std::exception& e) {
    for (const auto& algo : cfg.algorithms) {
      ResultRow row = blank_row(run_id, seed, algo, cfg.pairs);
      row.status = "generation_failed";
      rows.push_back(row);
    }
    return rows;
  }
  LpCache lp{inst, cfg.frame_length, std::nullopt};
  for (const auto& algo : cfg.algorithms) {
    ResultRow row = blank_row(run_id, seed, algo, cfg.pairs);
    const auto start = Clock::now();
    try {
      row = evaluate(cfg, inst, lp, algo, row);
    } catch (const std::exception&) {
      row.status = "error";
    }
    row.wall_ms = elapsed_ms(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ScenarioConfig& config) {
  validate(config);
  std::vector<std::vector<ResultRow>> per_run(static_cast<std::size_t>(config.runs));
  if (config.algorithms.empty()) return {};

  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int r = next++; r < config.runs; r = next++)
      per_run[static_cast<std::size_t>(r)] = evaluate_run(config, r);
  };
  const int workers = std::min(config.threads, std::max(config.runs, 1));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
  }

  std::vector<ResultRow> rows;
  for (auto& run : per_run)
    for (auto& row : run) rows.push_back(std::move(row));
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryRow> out;
  std::map<std::pair<std::string, int>, std::vector<double>> samples;
  for (const ResultRow& r : rows) {
    if (!r.throughput) continue;
    const auto key = std::make_pair(r.algorithm, r.n);
    if (!samples.contains(key)) out.push_back({r.algorithm, r.n});
    samples[key].push_back(*r.throughput);
  }
  for (SummaryRow& s : out) {
    const auto& v = samples[{s.algorithm, s.n}];
    s.samples = static_cast<int>(v.size());
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / v.size();
    double sq = 0.0;
    for (double x : v) sq += (x - s.mean) * (x - s.mean);
    s.stddev = v.size() > 1 ? std::sqrt(sq / (v.size() - 1)) : 0.0;
  }
  return out;
}

namespace {

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

std::optional<double> parse_opt_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

void write_results(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kResultHeader << "\n";
  for (const ResultRow& r : rows) {
    out << r.run_id << ',' << r.seed << ',' << r.algorithm << ',' << r.n << ','
        << opt_real(r.throughput) << ',' << opt_real(r.lp_bound) << ',' << opt_real(r.opt) << ','
        << opt_real(r.delta_ratio) << ',' << r.uncovered << ','
        << (r.slots_used ? std::to_string(*r.slots_used) : "") << ',' << format_real(r.wall_ms)
        << ',' << r.status << "\n";
  }
}

std::vector<ResultRow> read_results(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultHeader)
    throw std::invalid_argument("results file does not start with the expected header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 12) throw std::invalid_argument("results row has " + std::to_string(c.size()) + " cells");
    ResultRow r;
    r.run_id = std::stoi(c[0]);
    r.seed = std::stoull(c[1]);
    r.algorithm = c[2];
    r.n = std::stoi(c[3]);
    r.throughput = parse_opt_real(c[4]);
    r.lp_bound = parse_opt_real(c[5]);
    r.opt = parse_opt_real(c[6]);
    r.delta_ratio = parse_opt_real(c[7]);
    r.uncovered = std::stoi(c[8]);
    if (!c[9].empty()) r.slots_used = std::stoi(c[9]);
    r.wall_ms = std::stod(c[10]);
    r.status = c[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "algorithm,n,mean,stddev,samples\n";
  for (const SummaryRow& s : rows)
    out << s.algorithm << ',' << s.n << ',' << format_real(s.mean) << ',' << format_real(s.stddev)
        << ',' << s.samples << "\n";
}

std::filesystem::path summary_path(const std::filesystem::path& results) {
  std::filesystem::path p = results;
  p.replace_extension(".summary.csv");
  return p;
}

void emit_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  const auto write = [](const std::filesystem::path& p, auto&& body) {
    std::ofstream f(p, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
    body(f);
    if (!f.flush()) throw std::runtime_error("write failed for '" + p.string() + "'");
  };
  write(path, [&](std::ostream& f) { write_results(rows, f); });
  write(summary_path(path), [&](std::ostream& f) { write_summary(summarize(rows), f); });
}

}  // namespace sinrsched
