#include "sinrsched/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace sinrsched {

double compute_rho(double alpha, double beta) {
  if (!(alpha > 2.0)) throw std::domain_error("rho needs alpha > 2");
  if (!(beta >= 1.0)) throw std::domain_error("rho needs beta >= 1");
  return 4.0 * std::pow(2.0 * std::numbers::pi * beta * (alpha - 1.0) / (alpha - 2.0), 1.0 / alpha);
}

int compute_diversity(double length_ratio) {
  if (!(length_ratio >= 1.0) || !std::isfinite(length_ratio))
    throw std::domain_error("length ratio must be finite and >= 1");
  // Lengths come out of sqrt; a ratio meant to be 4 may land on 3.9999999.
  // Rounding k up only widens the sensing range.
  return static_cast<int>(std::floor(std::log2(length_ratio) + 1e-9));
}

namespace {

std::pair<double, double> length_extremes(const NetworkInstance& instance) {
  if (instance.links.empty()) throw std::domain_error("instance has no links");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const Link& l : instance.links) {
    const double d = link_length(instance, l.id);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

}  // namespace

int compute_diversity(const NetworkInstance& instance) {
  const auto [lo, hi] = length_extremes(instance);
  return compute_diversity(hi / lo);
}

ProtocolParams make_protocol_params(const NetworkInstance& instance, int mini_slot_count) {
  validate(instance);
  ProtocolParams p;
  p.rho = compute_rho(instance.radio.alpha, instance.radio.beta);
  p.diversity_k = compute_diversity(instance);
  p.sensing_range = p.rho * std::ldexp(1.0, p.diversity_k);
  p.mini_slot_count = mini_slot_count;
  p.d_min_normalization = 1.0 / length_extremes(instance).first;
  validate(p);
  return p;
}

void validate(const ProtocolParams& p) {
  if (!(p.sensing_range > 0.0) || !std::isfinite(p.sensing_range))
    throw std::invalid_argument("sensing range must be finite and positive");
  if (!(p.d_min_normalization > 0.0) || !std::isfinite(p.d_min_normalization))
    throw std::invalid_argument("normalisation factor must be finite and positive");
  if (p.mini_slot_count < 2) throw std::invalid_argument("need at least two mini-slots");
  if (p.max_backoff < 1) throw std::invalid_argument("max backoff must be >= 1");
}

double theorem3_bound(double d_max_normalized, double alpha, double beta) {
  const double rho = compute_rho(alpha, beta);
  return std::pow(d_max_normalized, alpha) * std::pow(rho + 2.0, alpha) / beta;
}

double theorem3_bound(const NetworkInstance& instance, const ProtocolParams& params) {
  const auto [lo, hi] = length_extremes(instance);
  (void)lo;
  const double alpha = instance.radio.alpha;
  return std::pow(hi * params.d_min_normalization, alpha) * std::pow(params.rho + 2.0, alpha) /
         instance.radio.beta;
}

namespace {

class Simulator {
 public:
  Simulator(const NetworkInstance& inst, const ProtocolParams& p, std::uint64_t seed)
      : inst_(inst), p_(p), rng_(seed), senders_(inst.node_count()) {
    for (const Link& l : inst.links) senders_[static_cast<std::size_t>(l.sender)].links.push_back(l.id);
    for (auto& s : senders_) s.pending = s.links;
    trace_.first_scheduled.assign(inst.link_count(), 0);
  }

  SimTrace run(const SimOptions& opt) {
    for (int slot = 1; slot <= opt.max_slots; ++slot) {
      trace_.slots.push_back(step(slot));
      if (!trace_.complete && remaining_ == 0) trace_.complete = true;
      if (trace_.complete && slot >= opt.min_slots) break;
    }
    if (trace_.complete)
      trace_.slots_used =
          *std::max_element(trace_.first_scheduled.begin(), trace_.first_scheduled.end());
    else
      trace_.slots_used = static_cast<int>(trace_.slots.size());
    return std::move(trace_);
  }

 private:
  struct SenderState {
    std::vector<LinkId> links;
    std::vector<LinkId> pending;  // not yet delivered once, ascending id
    int next_slot = 1;            // backoff: earliest slot to contend again
    std::size_t round_robin = 0;
  };

  bool within_range(NodeId a, NodeId b) const {
    return distance(inst_, a, b) * p_.d_min_normalization <= p_.sensing_range;
  }

  bool pending_neighbour(NodeId v) const {
    for (std::size_t u = 0; u < senders_.size(); ++u) {
      if (static_cast<NodeId>(u) == v || senders_[u].pending.empty()) continue;
      if (within_range(v, static_cast<NodeId>(u))) return true;
    }
    return false;
  }

  int draw(int n) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return std::min(n - 1, static_cast<int>(u * n));
  }

  SlotOutcome step(int slot) {
    SlotOutcome out;
    out.slot = slot;

    // Phase 1: contenders pick a mini-slot; earliest unsensed senders occupy.
    for (std::size_t v = 0; v < senders_.size(); ++v) {
      SenderState& s = senders_[v];
      if (s.links.empty() || s.next_slot > slot) continue;
      LinkId link;
      if (!s.pending.empty()) {
        link = s.pending.front();
      } else {
        if (pending_neighbour(static_cast<NodeId>(v))) continue;
        link = s.links[s.round_robin++ % s.links.size()];
      }
      NodeEvent e;
      e.node = static_cast<NodeId>(v);
      e.link = link;
      e.mini_slot = draw(p_.mini_slot_count);
      out.events.push_back(e);
    }
    std::sort(out.events.begin(), out.events.end(), [](const NodeEvent& a, const NodeEvent& b) {
      return a.mini_slot != b.mini_slot ? a.mini_slot < b.mini_slot : a.node < b.node;
    });

    std::vector<std::size_t> occupying;
    for (std::size_t i = 0; i < out.events.size(); ++i) {
      NodeEvent& e = out.events[i];
      for (std::size_t j : occupying) {
        if (within_range(e.node, out.events[j].node)) {
          e.sensed_busy = true;
          break;
        }
      }
      if (e.sensed_busy)
        senders_[static_cast<std::size_t>(e.node)].next_slot = slot + 1;
      else
        occupying.push_back(i);
    }

    // Phase 2: one CTS per receiver, earliest RTS wins; a receiver that is
    // itself about to send grants nothing.
    std::vector<bool> occupier(inst_.node_count(), false);
    for (std::size_t i : occupying) occupier[static_cast<std::size_t>(out.events[i].node)] = true;
    std::map<NodeId, std::size_t> grant;  // receiver -> event index
    for (std::size_t i : occupying) {
      NodeEvent& e = out.events[i];
      e.rts_sent = true;
      const NodeId rx = inst_.link(e.link).receiver;
      if (occupier[static_cast<std::size_t>(rx)]) continue;
      grant.try_emplace(rx, i);  // `occupying` is already in RTS order
    }
    std::vector<LinkId> granted;
    for (const auto& [rx, i] : grant) {
      out.events[i].cts_granted = true;
      granted.push_back(out.events[i].link);
    }
    for (std::size_t i : occupying) {
      const NodeEvent& e = out.events[i];
      if (!e.cts_granted)
        senders_[static_cast<std::size_t>(e.node)].next_slot = slot + 1 + draw(p_.max_backoff);
    }

    // Phase 3: data-ack, success measured against every granted transmission.
    for (std::size_t i : occupying) {
      NodeEvent& e = out.events[i];
      if (!e.cts_granted) continue;
      std::vector<LinkId> others;
      for (LinkId g : granted)
        if (g != e.link) others.push_back(g);
      e.sinr = sinr_at_receiver(inst_, e.link, others);
      e.data_success = e.sinr >= inst_.radio.beta;
      SenderState& s = senders_[static_cast<std::size_t>(e.node)];
      s.next_slot = slot + 1;
      if (!e.data_success) {
        ++trace_.data_failures;
        continue;
      }
      out.completed.push_back(e.link);
      out.completed_sinr.push_back(e.sinr);
      auto it = std::find(s.pending.begin(), s.pending.end(), e.link);
      if (it != s.pending.end()) {
        s.pending.erase(it);
        trace_.first_scheduled[static_cast<std::size_t>(e.link)] = slot;
        --remaining_;
      }
    }

    for (std::size_t a = 0; a < out.completed.size(); ++a)
      for (std::size_t b = a + 1; b < out.completed.size(); ++b)
        if (within_range(inst_.link(out.completed[a]).sender, inst_.link(out.completed[b]).sender))
          throw std::logic_error("two completing senders inside one sensing range");
    return out;
  }

  const NetworkInstance& inst_;
  const ProtocolParams& p_;
  std::mt19937_64 rng_;
  std::vector<SenderState> senders_;
  SimTrace trace_;
  int remaining_ = static_cast<int>(inst_.link_count());
};

}  // namespace

SimTrace run_distributed(const NetworkInstance& instance, const ProtocolParams& params,
                         SimOptions options, std::uint64_t seed) {
  validate(instance);
  validate(params);
  if (options.max_slots < 1) throw std::invalid_argument("max_slots must be >= 1");
  return Simulator(instance, params, seed).run(options);
}

double delivered_throughput(const NetworkInstance& instance, const SimTrace& trace, int slots) {
  if (slots < 1) throw std::invalid_argument("slot count must be >= 1");
  double total = 0.0;
  for (const SlotOutcome& s : trace.slots) {
    if (s.slot > slots) break;
    for (LinkId l : s.completed) total += instance.link(l).rate;
  }
  return total / slots;
}

void write_trace(const SimTrace& trace, std::ostream& out) {
  out << "# slot|contenders node:link:mini|busy|granted|denied|failed|completed link:sinr_db\n";
  const auto join = [&out](const auto& items, auto&& emit) {
    bool first = true;
    for (const auto& it : items) {
      if (!first) out << ',';
      first = false;
      emit(it);
    }
  };
  for (const SlotOutcome& s : trace.slots) {
    out << s.slot << '|';
    join(s.events, [&](const NodeEvent& e) { out << e.node << ':' << e.link << ':' << e.mini_slot; });
    out << '|';
    std::vector<NodeEvent> busy, granted, denied, failed;
    for (const NodeEvent& e : s.events) {
      if (e.sensed_busy) busy.push_back(e);
      else if (!e.cts_granted) denied.push_back(e);
      else {
        granted.push_back(e);
        if (!e.data_success) failed.push_back(e);
      }
    }
    join(busy, [&](const NodeEvent& e) { out << e.node; });
    out << '|';
    join(granted, [&](const NodeEvent& e) { out << e.link; });
    out << '|';
    join(denied, [&](const NodeEvent& e) { out << e.link; });
    out << '|';
    join(failed, [&](const NodeEvent& e) { out << e.link; });
    out << '|';
    for (std::size_t i = 0; i < s.completed.size(); ++i) {
      if (i) out << ',';
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", linear_to_db(s.completed_sinr[i]));
      out << s.completed[i] << ':' << buf;
    }
    out << '\n';
  }
}

}  // namespace sinrsched
