#include "sinrsched/schedule.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace sinrsched {

Schedule::Schedule(int frame_length) {
  if (frame_length < 1) throw std::invalid_argument("frame length must be >= 1");
  slots.resize(static_cast<std::size_t>(frame_length));
}

void validate(const NetworkInstance& instance, const Schedule& schedule) {
  if (schedule.frame_length() < 1) throw std::invalid_argument("frame length must be >= 1");
  const auto m = static_cast<LinkId>(instance.link_count());
  for (int t = 0; t < schedule.frame_length(); ++t) {
    std::set<LinkId> seen;
    for (LinkId l : schedule.slots[static_cast<std::size_t>(t)]) {
      if (l < 0 || l >= m)
        throw std::invalid_argument("slot " + std::to_string(t + 1) + " references unknown link " +
                                    std::to_string(l));
      if (!seen.insert(l).second)
        throw std::invalid_argument("slot " + std::to_string(t + 1) + " lists link " +
                                    std::to_string(l) + " twice");
    }
  }
}

std::vector<LinkId> check_coverage(const NetworkInstance& instance, const Schedule& schedule) {
  validate(instance, schedule);
  std::vector<int> count(instance.link_count(), 0);
  for (const auto& slot : schedule.slots)
    for (LinkId l : slot) ++count[static_cast<std::size_t>(l)];
  std::vector<LinkId> missing;
  for (std::size_t l = 0; l < count.size(); ++l)
    if (count[l] == 0) missing.push_back(static_cast<LinkId>(l));
  return missing;
}

RadioWitnesses check_radio_constraints(const NetworkInstance& instance,
                                       const Schedule& schedule) {
  validate(instance, schedule);
  RadioWitnesses w;
  for (int t = 0; t < schedule.frame_length(); ++t) {
    std::map<NodeId, int> sends, receives;
    for (LinkId id : schedule.slots[static_cast<std::size_t>(t)]) {
      const Link& l = instance.link(id);
      ++sends[l.sender];
      ++receives[l.receiver];
    }
    for (auto [node, n] : receives)
      if (n >= 2) w.multi_receive.push_back({t, node});
    for (auto [node, n] : sends)
      if (n >= 2) w.multi_send.push_back({t, node});
    for (const auto& entry : sends)
      if (receives.contains(entry.first)) w.half_duplex.push_back({t, entry.first});
  }
  return w;
}

std::vector<SinrWitness> check_sinr(const NetworkInstance& instance, const Schedule& schedule) {
  validate(instance, schedule);
  std::vector<SinrWitness> out;
  const double beta = instance.radio.beta;
  for (int t = 0; t < schedule.frame_length(); ++t) {
    const auto& slot = schedule.slots[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < slot.size(); ++i) {
      std::vector<LinkId> others;
      others.reserve(slot.size());
      for (std::size_t j = 0; j < slot.size(); ++j)
        if (j != i) others.push_back(slot[j]);
      const double sinr = sinr_at_receiver(instance, slot[i], others);
      if (sinr < beta) out.push_back({t, slot[i], sinr});
    }
  }
  return out;
}

ConstraintReport check_all(const NetworkInstance& instance, const Schedule& schedule) {
  ConstraintReport r;
  r.uncovered = check_coverage(instance, schedule);
  r.radio = check_radio_constraints(instance, schedule);
  r.sinr = check_sinr(instance, schedule);
  r.feasible = r.uncovered.empty() && r.radio.empty() && r.sinr.empty();
  return r;
}

double throughput(const NetworkInstance& instance, const Schedule& schedule) {
  validate(instance, schedule);
  double total = 0.0;
  for (const auto& slot : schedule.slots)
    for (LinkId l : slot) total += instance.link(l).rate;
  return total / schedule.frame_length();
}

}  // namespace sinrsched
