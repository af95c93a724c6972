#include "sinrsched/baselines.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "slot_state.hpp"

namespace sinrsched {

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::ProtocolModel: return "pm";
    case BaselineKind::PhysicalGreedy: return "pg";
    case BaselineKind::PhysicalConflictGraph: return "pcg";
  }
  return "?";
}

namespace {

BaselineResult frame_from_classes(std::vector<std::vector<LinkId>> classes,
                                  std::vector<LinkId> uncovered, int frame_length) {
  BaselineResult r;
  r.schedule = Schedule(frame_length);
  r.colours = static_cast<int>(classes.size());
  for (auto& c : classes) std::sort(c.begin(), c.end());
  if (!classes.empty())
    for (int t = 0; t < frame_length; ++t)
      r.schedule.slots[static_cast<std::size_t>(t)] = classes[static_cast<std::size_t>(t) % classes.size()];
  std::sort(uncovered.begin(), uncovered.end());
  r.uncovered = std::move(uncovered);
  return r;
}

using ConflictFn = std::function<bool(const Link&, const Link&)>;

BaselineResult colour_greedy(const NetworkInstance& inst, int frame_length, const ConflictFn& conflict) {
  if (frame_length < 1) throw std::invalid_argument("frame length must be >= 1");
  validate(inst);
  std::vector<std::vector<LinkId>> classes;
  std::vector<LinkId> uncovered;
  for (const Link& l : inst.links) {
    bool placed = false;
    for (auto& c : classes) {
      const bool clash = std::any_of(c.begin(), c.end(),
                                     [&](LinkId k) { return conflict(l, inst.link(k)); });
      if (!clash) {
        c.push_back(l.id);
        placed = true;
        break;
      }
    }
    if (placed) continue;
    if (static_cast<int>(classes.size()) < frame_length)
      classes.push_back({l.id});
    else
      uncovered.push_back(l.id);
  }
  return frame_from_classes(std::move(classes), std::move(uncovered), frame_length);
}

}  // namespace

BaselineResult pm_schedule(const NetworkInstance& instance, double interference_range,
                           int frame_length) {
  if (!(interference_range > 0.0)) throw std::invalid_argument("interference range must be > 0");
  return colour_greedy(instance, frame_length, [&](const Link& a, const Link& b) {
    if (!detail::radio_compatible(a, b)) return true;
    return distance(instance, b.sender, a.receiver) <= interference_range ||
           distance(instance, a.sender, b.receiver) <= interference_range;
  });
}

BaselineResult pg_schedule(const NetworkInstance& instance, int frame_length) {
  if (frame_length < 1) throw std::invalid_argument("frame length must be >= 1");
  validate(instance);
  std::vector<LinkId> order(instance.link_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<LinkId>(i);
  std::stable_sort(order.begin(), order.end(), [&](LinkId a, LinkId b) {
    return instance.link(a).rate > instance.link(b).rate;
  });

  std::vector<std::vector<LinkId>> classes;
  std::vector<LinkId> uncovered;
  for (LinkId l : order) {
    bool placed = false;
    for (auto& c : classes) {
      if (detail::radio_compatible(instance, l, c) && detail::sinr_feasible_with(instance, c, l)) {
        c.push_back(l);
        placed = true;
        break;
      }
    }
    if (placed) continue;
    if (static_cast<int>(classes.size()) < frame_length && detail::sinr_feasible_with(instance, {}, l))
      classes.push_back({l});
    else
      uncovered.push_back(l);
  }
  return frame_from_classes(std::move(classes), std::move(uncovered), frame_length);
}

BaselineResult pcg_schedule(const NetworkInstance& instance, int frame_length) {
  const double beta = instance.radio.beta;
  return colour_greedy(instance, frame_length, [&](const Link& a, const Link& b) {
    if (!detail::radio_compatible(a, b)) return true;
    const LinkId only_b[] = {b.id};
    const LinkId only_a[] = {a.id};
    return sinr_at_receiver(instance, a.id, only_b) < beta ||
           sinr_at_receiver(instance, b.id, only_a) < beta;
  });
}

double effective_throughput(const NetworkInstance& instance, const Schedule& schedule) {
  validate(instance, schedule);
  double total = 0.0;
  for (const auto& slot : schedule.slots) {
    const auto sinr = detail::slot_sinr(instance, slot);
    for (std::size_t i = 0; i < slot.size(); ++i)
      if (sinr[i] >= instance.radio.beta) total += instance.link(slot[i]).rate;
  }
  return total / schedule.frame_length();
}

}  // namespace sinrsched
