#pragma once

// Schedule data model and the constraint checkers used as test oracles.
// Nothing in here is shared with the schedulers: the checkers recompute
// every constraint from the raw schedule.

#include <vector>

#include "sinrsched/radio.hpp"

namespace sinrsched {

/// Slots are stored 0-based; `slots[t]` lists the links transmitting in
/// slot t+1 of the frame.
struct Schedule {
  std::vector<std::vector<LinkId>> slots;

  Schedule() = default;
  explicit Schedule(int frame_length);

  int frame_length() const { return static_cast<int>(slots.size()); }
  bool operator==(const Schedule&) const = default;
};

/// Throws std::invalid_argument if T < 1, an id is unknown, or a link is
/// listed twice in one slot.
void validate(const NetworkInstance& instance, const Schedule& schedule);

struct NodeWitness {
  int slot = 0;  // 0-based
  NodeId node = 0;
  bool operator==(const NodeWitness&) const = default;
};

struct SinrWitness {
  int slot = 0;
  LinkId link = 0;
  double sinr = 0.0;
};

struct RadioWitnesses {
  std::vector<NodeWitness> multi_receive;  // a node receives >= 2 links
  std::vector<NodeWitness> multi_send;     // a node sends >= 2 links
  std::vector<NodeWitness> half_duplex;    // a node sends and receives
  bool empty() const {
    return multi_receive.empty() && multi_send.empty() && half_duplex.empty();
  }
};

struct ConstraintReport {
  std::vector<LinkId> uncovered;
  RadioWitnesses radio;
  std::vector<SinrWitness> sinr;
  bool feasible = false;
};

std::vector<LinkId> check_coverage(const NetworkInstance& instance, const Schedule& schedule);
RadioWitnesses check_radio_constraints(const NetworkInstance& instance, const Schedule& schedule);
std::vector<SinrWitness> check_sinr(const NetworkInstance& instance, const Schedule& schedule);
ConstraintReport check_all(const NetworkInstance& instance, const Schedule& schedule);

/// Average scheduled traffic per slot: (1/T) * sum_t sum_{l in slot t} b_l.
double throughput(const NetworkInstance& instance, const Schedule& schedule);

}  // namespace sinrsched
