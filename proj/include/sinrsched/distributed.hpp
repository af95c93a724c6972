#pragma once

// Slot-synchronous simulation of the three-phase carrier-sensing protocol:
// SENSING contention inside a mini-slotted window, RTS-CTS, then data-ack.
// The sensing range comes from the link-length diversity so that accepted
// transmissions meet the SINR threshold without central coordination.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sinrsched/radio.hpp"

namespace sinrsched {

/// 4 * (2 pi beta (alpha - 1) / (alpha - 2))^(1/alpha). Throws
/// std::domain_error unless alpha > 2 and beta >= 1.
double compute_rho(double alpha, double beta);

/// floor(log2(d_max / d_min)) for a length ratio >= 1.
int compute_diversity(double length_ratio);
int compute_diversity(const NetworkInstance& instance);

struct ProtocolParams {
  double rho = 0.0;
  int diversity_k = 0;
  /// Sensing range in normalised units (shortest link = 1); equals
  /// rho * 2^k for parameters built by make_protocol_params.
  double sensing_range = 0.0;
  int mini_slot_count = 64;
  /// Multiply plane distances by this to get normalised distances (1 / d_min).
  double d_min_normalization = 1.0;
  int max_backoff = 8;
};

ProtocolParams make_protocol_params(const NetworkInstance& instance, int mini_slot_count = 64);

/// Throws std::invalid_argument on a non-positive range or scale, fewer
/// than two mini-slots, or max_backoff < 1.
void validate(const ProtocolParams& params);

/// d_max^alpha (rho + 2)^alpha / beta with d_max normalised to d_min = 1.
double theorem3_bound(double d_max_normalized, double alpha, double beta);
double theorem3_bound(const NetworkInstance& instance, const ProtocolParams& params);

struct NodeEvent {
  NodeId node = 0;
  LinkId link = 0;
  int mini_slot = 0;
  bool sensed_busy = false;
  bool rts_sent = false;
  bool cts_granted = false;
  bool data_success = false;
  double sinr = 0.0;  // measured during data phase; 0 if it never got there
};

struct SlotOutcome {
  int slot = 0;  // 1-based
  std::vector<NodeEvent> events;      // one per contending sender, by mini-slot order
  std::vector<LinkId> completed;      // data-ack succeeded
  std::vector<double> completed_sinr; // parallel to `completed`
};

struct SimTrace {
  std::vector<SlotOutcome> slots;
  bool complete = false;  // every link delivered at least once
  int slots_used = 0;
  std::vector<int> first_scheduled;  // per link, 1-based slot, 0 = never
  int data_failures = 0;             // granted transmissions that missed beta
};

struct SimOptions {
  int max_slots = 1000;
  /// Keep simulating after coverage until at least this many slots ran.
  int min_slots = 0;
};

/// Throws std::invalid_argument for invalid instance/params or max_slots < 1.
SimTrace run_distributed(const NetworkInstance& instance, const ProtocolParams& params,
                         SimOptions options, std::uint64_t seed);

/// Delivered traffic per slot over the first `slots` simulated slots.
double delivered_throughput(const NetworkInstance& instance, const SimTrace& trace, int slots);

/// One line per slot:
///   slot|node:link:mini[,...]|busy nodes|granted links|denied links|failed links|link:sinr_db[,...]
/// Lists are comma separated and may be empty. A `#` header line comes first.
void write_trace(const SimTrace& trace, std::ostream& out);

}  // namespace sinrsched
