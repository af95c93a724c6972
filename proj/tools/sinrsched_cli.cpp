// sinrsched command line: scenario generation, scheduling, simulation,
// bound calculators, schedule checking and batch experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sinrsched/baselines.hpp"
#include "sinrsched/centralized.hpp"
#include "sinrsched/distributed.hpp"
#include "sinrsched/experiment.hpp"
#include "sinrsched/scenario.hpp"

using namespace sinrsched;

namespace {

// Exit code for a schedule that fails the checker.
constexpr int kInfeasible = 3;

struct Common {
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--config", c.config, "JSON configuration file");
  cmd->add_option("--out", c.out, "Output file (default: standard output)");
}

ScenarioConfig config_of(const Common& c) {
  return c.config.empty() ? ScenarioConfig{} : load_config(c.config);
}

// Writes through `body` to --out, or to stdout when no path was given.
template <class Fn>
void emit(const std::string& path, Fn&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  body(f);
  if (!f.flush()) throw std::runtime_error("write failed for '" + path + "'");
}

void print_report(const NetworkInstance& inst, const Schedule& s, std::ostream& out) {
  const ConstraintReport r = check_all(inst, s);
  out << "coverage:";
  for (LinkId l : r.uncovered) out << " link " << l;
  out << (r.uncovered.empty() ? " ok\n" : "\n");
  const auto nodes = [&](const char* name, const std::vector<NodeWitness>& w) {
    out << name << ":";
    for (const auto& x : w) out << " (slot " << x.slot + 1 << ", node " << x.node << ")";
    out << (w.empty() ? " ok\n" : "\n");
  };
  nodes("multi-receive", r.radio.multi_receive);
  nodes("multi-send", r.radio.multi_send);
  nodes("half-duplex", r.radio.half_duplex);
  out << "sinr:";
  for (const auto& x : r.sinr)
    out << " (slot " << x.slot + 1 << ", link " << x.link << ", " << format_real(x.sinr) << ")";
  out << (r.sinr.empty() ? " ok\n" : "\n");
  out << "throughput: " << format_real(throughput(inst, s)) << "\n";
  out << "feasible: " << (r.feasible ? "yes" : "no") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link scheduling under the SINR interference model"};
  app.require_subcommand(1);

  Common gen_opt;
  auto* gen = app.add_subcommand("gen", "Generate a random scenario");
  add_common(gen, gen_opt);
  std::optional<int> gen_pairs;
  gen->add_option("--pairs", gen_pairs, "Override the number of sender/receiver pairs");

  Common sched_opt;
  std::string algo = "app";
  std::string sched_scenario;
  std::optional<int> sched_frame;
  auto* sched = app.add_subcommand("schedule", "Schedule every link of a scenario");
  add_common(sched, sched_opt);
  sched->add_option("--algo", algo, "app, opt, pm, pg or pcg")
      ->check(CLI::IsMember({"app", "opt", "pm", "pg", "pcg"}));
  sched->add_option("--scenario", sched_scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  sched->add_option("--frame", sched_frame, "Frame length T (default: from config)");

  Common sim_opt;
  std::string sim_scenario;
  std::optional<int> sim_max;
  auto* sim = app.add_subcommand("simulate", "Run the distributed carrier-sensing protocol");
  add_common(sim, sim_opt);
  sim->add_option("--scenario", sim_scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  sim->add_option("--max-slots", sim_max, "Slot cap (default: |E| times the approximation ceiling)");

  Common bound_opt;
  int theorem = 1;
  double theta = 0.5, delta_ratio = 0.0, a_hat = 1.0;
  std::string bound_scenario;
  std::optional<double> d_max;
  auto* bound = app.add_subcommand("bound", "Evaluate the rounding or distributed bound");
  add_common(bound, bound_opt);
  bound->add_option("--theorem", theorem, "1: rounding probability, 3: distributed ratio")
      ->required()
      ->check(CLI::IsMember({1, 3}));
  bound->add_option("--theta", theta, "Theorem 1: tolerated loss fraction");
  bound->add_option("--delta-ratio", delta_ratio, "Theorem 1: repair change over LP value");
  bound->add_option("--a-hat", a_hat, "Theorem 1: LP objective");
  bound->add_option("--d-max", d_max, "Theorem 3: longest link over shortest");
  bound->add_option("--scenario", bound_scenario, "Theorem 3: take d_max from a scenario")
      ->check(CLI::ExistingFile);

  Common check_opt;
  std::string check_scenario, check_schedule;
  auto* check = app.add_subcommand("check", "Check a schedule against every constraint");
  add_common(check, check_opt);
  check->add_option("--scenario", check_scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  check->add_option("--schedule", check_schedule, "Schedule file")->required()->check(CLI::ExistingFile);

  Common exp_opt;
  std::optional<int> exp_threads, exp_runs;
  auto* exp = app.add_subcommand("experiment", "Run a batch experiment and write result files");
  add_common(exp, exp_opt);
  exp->add_option("--threads", exp_threads, "Worker threads");
  exp->add_option("--runs", exp_runs, "Override the number of runs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      ScenarioConfig cfg = config_of(gen_opt);
      if (gen_pairs) cfg.pairs = *gen_pairs;
      const NetworkInstance inst = generate_scenario(cfg, gen_opt.seed);
      emit(gen_opt.out, [&](std::ostream& o) { write_scenario(inst, o); });
      return 0;
    }

    if (*sched) {
      const ScenarioConfig cfg = config_of(sched_opt);
      const NetworkInstance inst = load_scenario(sched_scenario);
      const int T = sched_frame.value_or(cfg.frame_length);
      Schedule s;
      std::string note;
      if (algo == "app") {
        const AppResult r = app_schedule(inst, T, sched_opt.seed);
        if (r.lp_status != LpStatus::Optimal) {
          std::cerr << "error: LP relaxation infeasible for T = " << T << "\n";
          return 2;
        }
        s = r.outcome.schedule;
        note = "lp_bound " + format_real(r.lp_objective) + " uncovered " +
               std::to_string(r.outcome.uncovered.size());
      } else if (algo == "opt") {
        const ExactResult r = exhaustive_opt(inst, T, cfg.exhaustive);
        if (!r.feasible) {
          std::cerr << "error: no covering schedule with T = " << T << "\n";
          return 2;
        }
        s = r.schedule;
        note = "optimum " + format_real(r.optimum);
      } else {
        const BaselineResult r = algo == "pm"   ? pm_schedule(inst, cfg.interference_range, T)
                                 : algo == "pg" ? pg_schedule(inst, T)
                                                : pcg_schedule(inst, T);
        s = r.schedule;
        note = "colours " + std::to_string(r.colours) + " uncovered " + std::to_string(r.uncovered.size()) +
               " effective " + format_real(effective_throughput(inst, s));
      }
      emit(sched_opt.out, [&](std::ostream& o) { write_schedule(s, o); });
      std::cerr << algo << ": throughput " << format_real(throughput(inst, s)) << " " << note << "\n";
      return 0;
    }

    if (*sim) {
      const ScenarioConfig cfg = config_of(sim_opt);
      const NetworkInstance inst = load_scenario(sim_scenario);
      const ProtocolParams params = make_protocol_params(inst, cfg.mini_slots);
      SimOptions opt;
      const double cap = static_cast<double>(inst.link_count()) * theorem3_bound(inst, params);
      opt.max_slots = sim_max.value_or(static_cast<int>(std::min<double>(std::ceil(cap), cfg.max_distributed_slots)));
      const SimTrace trace = run_distributed(inst, params, opt, sim_opt.seed);
      emit(sim_opt.out, [&](std::ostream& o) { write_trace(trace, o); });
      std::cerr << "complete " << (trace.complete ? "yes" : "no") << " slots_used " << trace.slots_used
                << " sensing_range " << format_real(params.sensing_range) << " k " << params.diversity_k
                << "\n";
      return trace.complete ? 0 : 2;
    }

    if (*bound) {
      double value = 0.0;
      if (theorem == 1) {
        value = theorem1_bound(theta, delta_ratio, a_hat);
      } else if (!bound_scenario.empty()) {
        const NetworkInstance inst = load_scenario(bound_scenario);
        value = theorem3_bound(inst, make_protocol_params(inst));
      } else {
        const RadioParams r = config_of(bound_opt).radio();
        value = theorem3_bound(d_max.value_or(1.0), r.alpha, r.beta);
      }
      emit(bound_opt.out, [&](std::ostream& o) { o << format_real(value) << "\n"; });
      return 0;
    }

    if (*check) {
      const NetworkInstance inst = load_scenario(check_scenario);
      const Schedule s = load_schedule(check_schedule);
      validate(inst, s);
      emit(check_opt.out, [&](std::ostream& o) { print_report(inst, s, o); });
      return check_all(inst, s).feasible ? 0 : kInfeasible;
    }

    if (*exp) {
      ScenarioConfig cfg = config_of(exp_opt);
      if (exp->count("--seed")) cfg.master_seed = exp_opt.seed;
      if (exp_threads) cfg.threads = *exp_threads;
      if (exp_runs) cfg.runs = *exp_runs;
      validate(cfg);
      const auto rows = run_experiment(cfg);
      if (exp_opt.out.empty()) {
        write_results(rows, std::cout);
      } else {
        emit_results(rows, exp_opt.out);
        std::cerr << "wrote " << exp_opt.out << " and " << summary_path(exp_opt.out).string() << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
