#pragma once

// Centralized scheduling: LP relaxation -> randomized rounding -> repair of
// the one-transceiver, half-duplex and SINR constraints -> coverage fix.
// Also the exact exhaustive optimum used as an oracle, and the rounding
// probability bound.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sinrsched/lp.hpp"
#include "sinrsched/radio.hpp"
#include "sinrsched/schedule.hpp"

namespace sinrsched {

/// Uniform [0, 1) draw for one (link, slot) variable. Each pair gets its own
/// mt19937_64 stream seeded through std::seed_seq from (seed, link, slot),
/// and the double is formed from the top 53 bits, so the sequence is the
/// same on every conforming platform.
double rounding_draw(std::uint64_t seed, LinkId link, int slot);

/// Independent Bernoulli(x̂) per (link, slot). Returned slots list link ids
/// in increasing order.
Schedule randomized_round(const FractionalSolution& fractional, std::uint64_t seed);

/// Per slot, keeps links greedily in non-increasing x̂ (ties: lower id):
/// first against the one-transceiver and half-duplex rules, then against
/// aggregate SINR. The output passes every per-slot check.
Schedule repair(const NetworkInstance& instance, const FractionalSolution& fractional,
                const Schedule& raw);

struct CoverageFix {
  Schedule schedule;
  std::vector<LinkId> uncovered;
};

/// Forces every link that ended up in no slot into its highest-x̂ slot that
/// can take it, evicting non-forced links of strictly smaller x̂ there when
/// needed. Forced links are never evicted; links that fit nowhere are
/// returned in `uncovered`. Each link is attempted at most once.
CoverageFix coverage_fix(const NetworkInstance& instance, const FractionalSolution& fractional,
                         const Schedule& repaired);

struct RoundingOutcome {
  Schedule schedule;
  double a_rand = 0.0;   // throughput straight after rounding
  double delta_a = 0.0;  // throughput change made by repair + coverage fix
  std::vector<LinkId> uncovered;
  std::uint64_t seed = 0;
};

/// round -> repair -> coverage_fix for an already solved relaxation.
RoundingOutcome round_and_repair(const NetworkInstance& instance,
                                 const FractionalSolution& fractional, std::uint64_t seed);

struct AppResult {
  LpStatus lp_status = LpStatus::Infeasible;
  double lp_objective = 0.0;  // Â
  RoundingOutcome outcome;    // empty when the LP is infeasible
};

AppResult app_schedule(const NetworkInstance& instance, int frame_length, std::uint64_t seed);

class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct ExhaustiveLimits {
  int max_links = 8;
  int max_frame = 4;
};

struct ExactResult {
  bool feasible = false;  // false when no schedule of this length covers every link
  Schedule schedule;
  double optimum = 0.0;
};

/// Exact ILP optimum by enumerating every feasible per-slot link set and
/// every covering assignment of sets to slots (dynamic programming over the
/// covered-link mask). Throws SizeGuardError past `limits`.
ExactResult exhaustive_opt(const NetworkInstance& instance, int frame_length,
                           ExhaustiveLimits limits = {});

/// Fewest slots in which every link can be scheduled once; nullopt when
/// some link cannot meet its SINR threshold even alone.
std::optional<int> minimum_frame_length(const NetworkInstance& instance,
                                        ExhaustiveLimits limits = {});

/// 1 - exp(-(theta + r)^2 * a_hat / 2), lower bound on the probability that
/// the rounded schedule is within (1 - theta) of optimal. Requires
/// 0 < theta < 1, -theta < r < 1 - theta, a_hat > 0.
double theorem1_bound(double theta, double delta_ratio, double a_hat);

}  // namespace sinrsched
