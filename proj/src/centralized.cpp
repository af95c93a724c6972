#include "sinrsched/centralized.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "slot_state.hpp"

namespace sinrsched {

double rounding_draw(std::uint64_t seed, LinkId link, int slot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(link), static_cast<std::uint32_t>(slot)};
  std::mt19937_64 gen(seq);
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Schedule randomized_round(const FractionalSolution& fractional, std::uint64_t seed) {
  Schedule raw(fractional.frame_length);
  for (int t = 0; t < fractional.frame_length; ++t)
    for (LinkId l = 0; l < fractional.link_count; ++l)
      if (rounding_draw(seed, l, t) < fractional.value(l, t))
        raw.slots[static_cast<std::size_t>(t)].push_back(l);
  return raw;
}

namespace {

// Higher x̂ first, then lower link id.
std::vector<LinkId> by_priority(const FractionalSolution& f, int slot, std::vector<LinkId> links) {
  std::stable_sort(links.begin(), links.end(), [&](LinkId a, LinkId b) {
    const double xa = f.value(a, slot), xb = f.value(b, slot);
    return xa != xb ? xa > xb : a < b;
  });
  return links;
}

void check_shape(const NetworkInstance& instance, const FractionalSolution& f, const Schedule& s) {
  if (f.link_count != static_cast<int>(instance.link_count()) ||
      f.frame_length != s.frame_length())
    throw std::invalid_argument("fractional solution does not match instance/schedule shape");
  validate(instance, s);
}

}  // namespace

Schedule repair(const NetworkInstance& instance, const FractionalSolution& fractional,
                const Schedule& raw) {
  check_shape(instance, fractional, raw);
  Schedule out(raw.frame_length());
  for (int t = 0; t < raw.frame_length(); ++t) {
    const auto order = by_priority(fractional, t, raw.slots[static_cast<std::size_t>(t)]);
    std::vector<LinkId> radio_ok;
    for (LinkId l : order)
      if (detail::radio_compatible(instance, l, radio_ok)) radio_ok.push_back(l);
    std::vector<LinkId> kept;
    for (LinkId l : radio_ok)
      if (detail::sinr_feasible_with(instance, kept, l)) kept.push_back(l);
    std::sort(kept.begin(), kept.end());
    out.slots[static_cast<std::size_t>(t)] = std::move(kept);
  }
  return out;
}

namespace {

class CoverageFixer {
 public:
  CoverageFixer(const NetworkInstance& inst, const FractionalSolution& f, Schedule s)
      : inst_(inst), f_(f), schedule_(std::move(s)), forced_(inst.link_count(), -1) {}

  CoverageFix run() {
    std::vector<bool> attempted(inst_.link_count(), false);
    std::deque<LinkId> queue;
    for (LinkId l : uncovered_now()) queue.push_back(l);

    CoverageFix result;
    while (!queue.empty()) {
      const LinkId l = queue.front();
      queue.pop_front();
      if (attempted[static_cast<std::size_t>(l)] || count(l) > 0) continue;
      attempted[static_cast<std::size_t>(l)] = true;

      std::vector<LinkId> evicted;
      if (!place_anywhere(l, evicted)) {
        result.uncovered.push_back(l);
        continue;
      }
      for (LinkId e : evicted)
        if (count(e) == 0) queue.push_back(e);
    }
    std::sort(result.uncovered.begin(), result.uncovered.end());
    for (auto& slot : schedule_.slots) std::sort(slot.begin(), slot.end());
    result.schedule = std::move(schedule_);
    return result;
  }

 private:
  std::vector<LinkId> uncovered_now() const {
    std::vector<LinkId> out;
    for (const Link& l : inst_.links)
      if (count(l.id) == 0) out.push_back(l.id);
    return out;
  }

  int count(LinkId l) const {
    int c = 0;
    for (const auto& slot : schedule_.slots)
      c += static_cast<int>(std::count(slot.begin(), slot.end(), l));
    return c;
  }

  bool place_anywhere(LinkId l, std::vector<LinkId>& evicted) {
    std::vector<int> slots(static_cast<std::size_t>(schedule_.frame_length()));
    for (int t = 0; t < schedule_.frame_length(); ++t) slots[static_cast<std::size_t>(t)] = t;
    std::stable_sort(slots.begin(), slots.end(),
                     [&](int a, int b) { return f_.value(l, a) > f_.value(l, b); });
    for (int t : slots) {
      if (try_place(l, t, evicted)) {
        forced_[static_cast<std::size_t>(l)] = t;
        return true;
      }
    }
    return false;
  }

  bool evictable(LinkId k, LinkId forced_link, int t) const {
    return forced_[static_cast<std::size_t>(k)] != t && f_.value(k, t) < f_.value(forced_link, t);
  }

  // Lower priority first: smaller x̂, then higher id.
  bool lower_priority(LinkId a, LinkId b, int t) const {
    const double xa = f_.value(a, t), xb = f_.value(b, t);
    return xa != xb ? xa < xb : a > b;
  }

  bool try_place(LinkId l, int t, std::vector<LinkId>& evicted) {
    auto& slot = schedule_.slots[static_cast<std::size_t>(t)];
    std::vector<LinkId> keep;
    std::vector<LinkId> dropped;
    const Link& link = inst_.link(l);
    for (LinkId k : slot) {
      if (detail::radio_compatible(link, inst_.link(k))) {
        keep.push_back(k);
      } else if (evictable(k, l, t)) {
        dropped.push_back(k);
      } else {
        return false;
      }
    }

    for (;;) {
      std::vector<LinkId> trial = keep;
      trial.push_back(l);
      const auto sinr = detail::slot_sinr(inst_, trial);

      // The forced link and any protected member must be satisfied by
      // removing interferers; other violators are simply evicted.
      LinkId victim = -1;
      LinkId weakest_evictable = -1;
      for (std::size_t i = 0; i < trial.size(); ++i) {
        if (sinr[i] >= inst_.radio.beta) continue;
        const LinkId v = trial[i];
        if (v == l || !evictable(v, l, t)) {
          if (victim == -1 || v == l) victim = v;
        } else if (weakest_evictable == -1 || lower_priority(v, weakest_evictable, t)) {
          weakest_evictable = v;
        }
      }
      if (victim == -1 && weakest_evictable == -1) break;

      LinkId out = weakest_evictable;
      if (victim != -1) {
        const NodeId rx = inst_.link(victim).receiver;
        out = -1;
        double loudest = -1.0;
        for (LinkId k : keep) {
          if (k == victim || !evictable(k, l, t)) continue;
          const double g = link_gain(inst_, inst_.link(k).sender, rx);
          if (g > loudest) {
            loudest = g;
            out = k;
          }
        }
        if (out == -1) return false;
      }
      keep.erase(std::find(keep.begin(), keep.end(), out));
      dropped.push_back(out);
    }

    keep.push_back(l);
    slot = std::move(keep);
    evicted.insert(evicted.end(), dropped.begin(), dropped.end());
    return true;
  }

  const NetworkInstance& inst_;
  const FractionalSolution& f_;
  Schedule schedule_;
  std::vector<int> forced_;  // slot a link was forced into, -1 if none
};

}  // namespace

CoverageFix coverage_fix(const NetworkInstance& instance, const FractionalSolution& fractional,
                         const Schedule& repaired) {
  check_shape(instance, fractional, repaired);
  return CoverageFixer(instance, fractional, repaired).run();
}

RoundingOutcome round_and_repair(const NetworkInstance& instance,
                                 const FractionalSolution& fractional, std::uint64_t seed) {
  const Schedule raw = randomized_round(fractional, seed);
  CoverageFix fixed = coverage_fix(instance, fractional, repair(instance, fractional, raw));

  RoundingOutcome out;
  out.seed = seed;
  out.a_rand = throughput(instance, raw);
  out.delta_a = throughput(instance, fixed.schedule) - out.a_rand;
  out.schedule = std::move(fixed.schedule);
  out.uncovered = std::move(fixed.uncovered);
  return out;
}

AppResult app_schedule(const NetworkInstance& instance, int frame_length, std::uint64_t seed) {
  const LpModel model = build_lp(instance, frame_length);
  const LpOutcome lp = solve_lp(model);
  AppResult result;
  result.lp_status = lp.status;
  if (lp.status != LpStatus::Optimal) return result;
  result.lp_objective = lp.solution.objective;
  result.outcome = round_and_repair(instance, lp.solution, seed);
  return result;
}

namespace {

struct SubsetTable {
  std::vector<unsigned> masks;  // feasible single-slot link sets
  std::vector<double> weight;
};

SubsetTable feasible_subsets(const NetworkInstance& instance) {
  const int m = static_cast<int>(instance.link_count());
  SubsetTable table;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    Schedule one(1);
    double w = 0.0;
    for (int l = 0; l < m; ++l) {
      if (mask & (1u << l)) {
        one.slots[0].push_back(l);
        w += instance.link(l).rate;
      }
    }
    if (!check_radio_constraints(instance, one).empty()) continue;
    if (!check_sinr(instance, one).empty()) continue;
    table.masks.push_back(mask);
    table.weight.push_back(w);
  }
  return table;
}

}  // namespace

ExactResult exhaustive_opt(const NetworkInstance& instance, int frame_length,
                           ExhaustiveLimits limits) {
  validate(instance);
  const int m = static_cast<int>(instance.link_count());
  if (frame_length < 1) throw std::domain_error("frame length must be >= 1");
  if (m > limits.max_links || frame_length > limits.max_frame || m > 20)
    throw SizeGuardError("exhaustive search refused: " + std::to_string(m) + " links, T = " +
                         std::to_string(frame_length));

  const SubsetTable subsets = feasible_subsets(instance);
  const std::size_t states = std::size_t{1} << m;
  const double unreachable = -1.0;
  // best[t][cover]: max total weight of t slots whose union is `cover`.
  std::vector<std::vector<double>> best(static_cast<std::size_t>(frame_length) + 1,
                                        std::vector<double>(states, unreachable));
  std::vector<std::vector<std::pair<unsigned, std::size_t>>> parent(
      static_cast<std::size_t>(frame_length) + 1, std::vector<std::pair<unsigned, std::size_t>>(states));
  best[0][0] = 0.0;
  for (std::size_t t = 0; t < static_cast<std::size_t>(frame_length); ++t) {
    for (unsigned cover = 0; cover < states; ++cover) {
      if (best[t][cover] < 0.0) continue;
      for (std::size_t s = 0; s < subsets.masks.size(); ++s) {
        const unsigned next = cover | subsets.masks[s];
        const double w = best[t][cover] + subsets.weight[s];
        if (w > best[t + 1][next]) {
          best[t + 1][next] = w;
          parent[t + 1][next] = {cover, s};
        }
      }
    }
  }

  ExactResult result;
  const auto full = static_cast<unsigned>(states - 1);
  const auto last = static_cast<std::size_t>(frame_length);
  if (best[last][full] < 0.0) return result;
  result.feasible = true;
  result.optimum = best[last][full] / frame_length;
  result.schedule = Schedule(frame_length);
  unsigned cover = full;
  for (std::size_t t = last; t > 0; --t) {
    const auto [prev, s] = parent[t][cover];
    for (int l = 0; l < m; ++l)
      if (subsets.masks[s] & (1u << l)) result.schedule.slots[t - 1].push_back(l);
    cover = prev;
  }
  return result;
}

std::optional<int> minimum_frame_length(const NetworkInstance& instance, ExhaustiveLimits limits) {
  validate(instance);
  const int m = static_cast<int>(instance.link_count());
  if (m > limits.max_links || m > 20)
    throw SizeGuardError("minimum frame search refused: " + std::to_string(m) + " links");
  const SubsetTable subsets = feasible_subsets(instance);
  const std::size_t states = std::size_t{1} << m;
  const auto full = static_cast<unsigned>(states - 1);
  std::vector<bool> reach(states, false);
  reach[0] = true;
  for (int t = 1; t <= m; ++t) {
    std::vector<bool> next = reach;
    for (unsigned cover = 0; cover < states; ++cover) {
      if (!reach[cover]) continue;
      for (unsigned s : subsets.masks) next[cover | s] = true;
    }
    reach = std::move(next);
    if (reach[full]) return t;
  }
  return std::nullopt;
}

double theorem1_bound(double theta, double delta_ratio, double a_hat) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("theta must lie in (0, 1)");
  if (!(delta_ratio > -theta && delta_ratio < 1.0 - theta))
    throw std::domain_error("delta ratio must lie in (-theta, 1 - theta)");
  if (!(a_hat > 0.0)) throw std::domain_error("LP objective must be positive");
  const double delta = theta + delta_ratio;
  return 1.0 - std::exp(-delta * delta * a_hat / 2.0);
}

}  // namespace sinrsched
