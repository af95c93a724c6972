#pragma once

// Incremental single-slot feasibility used by the schedulers. Kept apart
// from schedule.cpp so the checkers stay an independent oracle.

#include <span>
#include <vector>

#include "sinrsched/radio.hpp"

namespace sinrsched::detail {

/// True when a and b can share a slot under the one-transceiver and
/// half-duplex rules.
inline bool radio_compatible(const Link& a, const Link& b) {
  return a.sender != b.sender && a.receiver != b.receiver && a.sender != b.receiver &&
         a.receiver != b.sender;
}

inline bool radio_compatible(const NetworkInstance& inst, LinkId l, std::span<const LinkId> set) {
  const Link& a = inst.link(l);
  for (LinkId k : set)
    if (!radio_compatible(a, inst.link(k))) return false;
  return true;
}

/// SINR of every member of `set` when all of them transmit together.
inline std::vector<double> slot_sinr(const NetworkInstance& inst, std::span<const LinkId> set) {
  const double power = inst.radio.tx_power;
  std::vector<double> out(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Link& li = inst.link(set[i]);
    double interference = 0.0;
    bool jammed = false;
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (k == i) continue;
      const NodeId s = inst.link(set[k]).sender;
      if (s == li.receiver) {
        jammed = true;
        break;
      }
      interference += power * link_gain(inst, s, li.receiver);
    }
    out[i] = jammed ? 0.0
                    : power * link_gain(inst, li.sender, li.receiver) /
                          (inst.radio.noise + interference);
  }
  return out;
}

inline bool sinr_feasible(const NetworkInstance& inst, std::span<const LinkId> set) {
  for (double s : slot_sinr(inst, set))
    if (s < inst.radio.beta) return false;
  return true;
}

/// Whether `set` plus `extra` meets every SINR threshold.
inline bool sinr_feasible_with(const NetworkInstance& inst, std::vector<LinkId> set, LinkId extra) {
  set.push_back(extra);
  return sinr_feasible(inst, set);
}

}  // namespace sinrsched::detail
