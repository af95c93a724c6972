#pragma once

// Scenario configuration, random scenario generation and the text formats
// for scenarios and schedules.
//
// Scenario file (all reals printed with %.17g so they round-trip exactly):
//
//   sinrsched-scenario 1
//   radio alpha=<a> beta=<b> noise=<N mW> tx_power=<P mW>
//   nodes <count>
//   <id> <x> <y>                 (one line per node, ids 0..count-1)
//   links <count>
//   <id> <sender> <receiver> <rate>
//
// Schedule file:
//
//   sinrsched-schedule 1
//   frame <T>
//   slot <t> [link ids...]       (t = 1..T, one line per slot)

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sinrsched/centralized.hpp"
#include "sinrsched/radio.hpp"
#include "sinrsched/schedule.hpp"

namespace sinrsched {

struct ScenarioConfig {
  double area_side = 100.0;
  int pairs = 10;          // n
  int node_count = 0;      // 0 -> 2n
  double tx_range = 1.0;   // R_T, upper bound on generated link length
  double min_link_length = 0.0;
  double interference_range = 2.5;  // R_I, used by the protocol-model baseline
  double noise_dbm = -90.0;
  double beta_db = 10.0;
  double alpha = 4.0;
  double tx_power_mw = 0.0;  // 0 -> 100 * beta * noise
  double rate = 1.0;
  int frame_length = 100;  // T
  int runs = 100;
  std::uint64_t master_seed = 1;
  std::vector<std::string> algorithms{"lp-bound", "app", "pm", "pg", "pcg"};
  ExhaustiveLimits exhaustive;
  int threads = 1;
  int mini_slots = 64;
  int max_distributed_slots = 1000000;

  int effective_node_count() const { return node_count > 0 ? node_count : 2 * pairs; }
  RadioParams radio() const;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioConfig& config);

/// Reads a JSON object whose keys are the field names above
/// (`exhaustive` is `{"max_links": .., "max_frame": ..}`); absent keys keep
/// their defaults. Unknown keys are rejected.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& json_text);

/// n sender/receiver pairs: each sender uniform over the square, its
/// receiver uniform over the disc of radius R_T around it (clipped to the
/// square and to min_link_length), then any extra unpaired nodes uniform.
/// Node 2i sends link i to node 2i+1. Throws std::runtime_error when a
/// placement keeps colliding after bounded retries.
NetworkInstance generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

void write_scenario(const NetworkInstance& instance, std::ostream& out);
NetworkInstance read_scenario(std::istream& in);
void save_scenario(const NetworkInstance& instance, const std::filesystem::path& path);
NetworkInstance load_scenario(const std::filesystem::path& path);

void write_schedule(const Schedule& schedule, std::ostream& out);
Schedule read_schedule(std::istream& in);
void save_schedule(const Schedule& schedule, const std::filesystem::path& path);
Schedule load_schedule(const std::filesystem::path& path);

/// %.17g
std::string format_real(double v);

}  // namespace sinrsched
