#pragma once

// Simplified comparator schedulers. They are stand-ins built from one-line
// descriptions of the usual protocol-model, greedy-physical and
// pairwise-conflict-graph approaches, not faithful reproductions of any
// published algorithm.
//
// Each baseline partitions the links into classes (colours). The frame
// repeats the classes cyclically: slot t carries class t mod C. Links that
// would need a colour >= T are reported as uncovered.

#include <string_view>
#include <vector>

#include "sinrsched/radio.hpp"
#include "sinrsched/schedule.hpp"

namespace sinrsched {

enum class BaselineKind { ProtocolModel, PhysicalGreedy, PhysicalConflictGraph };

std::string_view to_string(BaselineKind kind);

struct BaselineResult {
  Schedule schedule;
  int colours = 0;
  std::vector<LinkId> uncovered;
};

/// Greedy colouring, links in id order. Two links conflict if they share a
/// node or either receiver is within `interference_range` of the other's
/// sender. Output can break aggregate SINR.
BaselineResult pm_schedule(const NetworkInstance& instance, double interference_range,
                           int frame_length);

/// Links by descending rate (ties: lower id), each into the first class it
/// joins without breaking the radio rules or anyone's aggregate SINR.
BaselineResult pg_schedule(const NetworkInstance& instance, int frame_length);

/// Greedy colouring where links conflict if they share a node or either one
/// misses beta with the other as its only interferer. Ignores accumulation.
BaselineResult pcg_schedule(const NetworkInstance& instance, int frame_length);

/// Sum of rates of links that meet their SINR threshold in their slot,
/// averaged over the frame. Equals throughput() for SINR-feasible schedules.
double effective_throughput(const NetworkInstance& instance, const Schedule& schedule);

}  // namespace sinrsched
