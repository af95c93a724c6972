#pragma once

// LP relaxation of the link scheduling ILP: coverage, one-transceiver and
// half-duplex rows, and big-M linearised SINR rows, with x in [0, 1].

#include <iosfwd>
#include <utility>
#include <vector>

#include "sinrsched/radio.hpp"

namespace sinrsched {

inline constexpr double kLpFeasibilityTol = 1e-9;
inline constexpr double kLpObjectiveTol = 1e-7;

enum class RowKind { Coverage, MultiReceive, MultiSend, HalfDuplex, Sinr };
enum class Sense { LessEqual, GreaterEqual };

const char* to_string(RowKind kind);

struct LpRow {
  RowKind kind = RowKind::Coverage;
  int slot = -1;     // 0-based; -1 for coverage rows
  int subject = -1;  // link id (coverage, sinr) or node id (the rest)
  Sense sense = Sense::LessEqual;
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)
  double rhs = 0.0;
};

struct LpModel {
  int link_count = 0;
  int frame_length = 0;
  std::vector<double> objective;  // b_l / T per column; maximised
  std::vector<LpRow> rows;
  std::vector<double> big_m;  // per link

  int column(LinkId link, int slot) const { return slot * link_count + link; }
  int column_count() const { return link_count * frame_length; }
  std::size_t count_rows(RowKind kind) const;
};

/// Throws std::domain_error if frame_length < 1.
LpModel build_lp(const NetworkInstance& instance, int frame_length);

/// Writes the objective on a `max` line, then one row per line: `<kind> slot=<t> subject=<id> : <coef>*x[l,t] ... <=|>= rhs`.
void dump_lp(const LpModel& model, std::ostream& out);

struct FractionalSolution {
  int link_count = 0;
  int frame_length = 0;
  std::vector<double> values;  // indexed like LpModel::column, clamped to [0, 1]
  double objective = 0.0;

  double value(LinkId link, int slot) const {
    return values[static_cast<std::size_t>(slot * link_count + link)];
  }
};

enum class LpStatus { Optimal, Infeasible };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  FractionalSolution solution;  // meaningful only when Optimal
  int iterations = 0;
};

/// Dense-tableau bounded-variable simplex with Bland's rule. Rows that the
/// [0, 1] box already implies are dropped before the tableau is built.
/// An unbounded result is impossible for this model and throws
/// std::logic_error.
LpOutcome solve_lp(const LpModel& model);

/// Largest violation over all rows, each row measured relative to
/// max(|coefficients|, |rhs|, 1e-300) so physical units drop out.
double max_row_violation(const LpModel& model, const std::vector<double>& values);

double evaluate_objective(const LpModel& model, const std::vector<double>& values);

}  // namespace sinrsched
