#include "sinrsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

#include "simplex.hpp"

namespace sinrsched {

const char* to_string(RowKind kind) {
  switch (kind) {
    case RowKind::Coverage: return "coverage";
    case RowKind::MultiReceive: return "receive";
    case RowKind::MultiSend: return "send";
    case RowKind::HalfDuplex: return "duplex";
    case RowKind::Sinr: return "sinr";
  }
  return "?";
}

std::size_t LpModel::count_rows(RowKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [kind](const LpRow& r) { return r.kind == kind; }));
}

LpModel build_lp(const NetworkInstance& instance, int frame_length) {
  if (frame_length < 1) throw std::domain_error("frame length must be >= 1");
  validate(instance);

  LpModel model;
  model.link_count = static_cast<int>(instance.link_count());
  model.frame_length = frame_length;
  const int m = model.link_count;
  const double power = instance.radio.tx_power;
  const double beta = instance.radio.beta;
  const double noise = instance.radio.noise;

  model.objective.resize(static_cast<std::size_t>(model.column_count()));
  for (int t = 0; t < frame_length; ++t)
    for (const Link& l : instance.links)
      model.objective[static_cast<std::size_t>(model.column(l.id, t))] = l.rate / frame_length;

  // Interference coefficients are slot independent: gain[i][k] is the gain
  // from link k's sender to link i's receiver, 0 where k's sender is i's
  // receiver (that pair is already excluded by the half-duplex row).
  std::vector<std::vector<double>> cross(static_cast<std::size_t>(m),
                                         std::vector<double>(static_cast<std::size_t>(m), 0.0));
  model.big_m.assign(static_cast<std::size_t>(m), 0.0);
  for (const Link& li : instance.links) {
    double total = 0.0;
    for (const Link& lk : instance.links) {
      if (lk.id == li.id || lk.sender == li.receiver) continue;
      const double g = link_gain(instance, lk.sender, li.receiver);
      cross[static_cast<std::size_t>(li.id)][static_cast<std::size_t>(lk.id)] = g;
      total += power * g;
    }
    model.big_m[static_cast<std::size_t>(li.id)] = beta * (noise + total);
  }

  for (const Link& l : instance.links) {
    LpRow row{RowKind::Coverage, -1, l.id, Sense::GreaterEqual, {}, 1.0};
    for (int t = 0; t < frame_length; ++t) row.terms.emplace_back(model.column(l.id, t), 1.0);
    model.rows.push_back(std::move(row));
  }

  std::set<NodeId> senders, receivers;
  for (const Link& l : instance.links) {
    senders.insert(l.sender);
    receivers.insert(l.receiver);
  }

  for (int t = 0; t < frame_length; ++t) {
    for (NodeId v : receivers) {
      LpRow row{RowKind::MultiReceive, t, v, Sense::LessEqual, {}, 1.0};
      for (const Link& l : instance.links)
        if (l.receiver == v) row.terms.emplace_back(model.column(l.id, t), 1.0);
      model.rows.push_back(std::move(row));
    }
    for (NodeId v : senders) {
      LpRow row{RowKind::MultiSend, t, v, Sense::LessEqual, {}, 1.0};
      for (const Link& l : instance.links)
        if (l.sender == v) row.terms.emplace_back(model.column(l.id, t), 1.0);
      model.rows.push_back(std::move(row));
    }
    for (NodeId v : senders) {
      if (!receivers.contains(v)) continue;
      LpRow row{RowKind::HalfDuplex, t, v, Sense::LessEqual, {}, 1.0};
      for (const Link& l : instance.links)
        if (l.sender == v || l.receiver == v) row.terms.emplace_back(model.column(l.id, t), 1.0);
      model.rows.push_back(std::move(row));
    }
    // P g_ii x_i + (1 - x_i) M_i >= beta (N + sum_k P g_ki x_k)
    for (const Link& li : instance.links) {
      const auto i = static_cast<std::size_t>(li.id);
      const double own = power * link_gain(instance, li.sender, li.receiver);
      LpRow row{RowKind::Sinr, t, li.id, Sense::GreaterEqual, {}, beta * noise - model.big_m[i]};
      row.terms.emplace_back(model.column(li.id, t), own - model.big_m[i]);
      for (const Link& lk : instance.links) {
        const double g = cross[i][static_cast<std::size_t>(lk.id)];
        if (g != 0.0) row.terms.emplace_back(model.column(lk.id, t), -beta * power * g);
      }
      model.rows.push_back(std::move(row));
    }
  }
  return model;
}

void dump_lp(const LpModel& model, std::ostream& out) {
  const auto name = [&](int col) {
    return "x[" + std::to_string(col % model.link_count) + "," +
           std::to_string(col / model.link_count + 1) + "]";
  };
  out << "max";
  for (int c = 0; c < model.column_count(); ++c)
    out << " " << model.objective[static_cast<std::size_t>(c)] << "*" << name(c);
  out << "\n";
  for (const LpRow& r : model.rows) {
    out << to_string(r.kind) << " slot=" << (r.slot < 0 ? 0 : r.slot + 1)
        << " subject=" << r.subject << " :";
    for (const auto& [col, coef] : r.terms) out << " " << coef << "*" << name(col);
    out << (r.sense == Sense::LessEqual ? " <= " : " >= ") << r.rhs << "\n";
  }
}

namespace {

double row_scale(const LpRow& r) {
  double s = 0.0;
  for (const auto& term : r.terms) s = std::max(s, std::abs(term.second));
  return s;
}

// True when every point of the [0, 1] box satisfies the (scaled) row.
bool implied_by_box(const LpRow& r, double scale) {
  double lo = 0.0, hi = 0.0;
  for (const auto& term : r.terms) {
    const double a = term.second / scale;
    (a < 0.0 ? lo : hi) += a;
  }
  const double rhs = r.rhs / scale;
  return r.sense == Sense::LessEqual ? hi <= rhs + 1e-12 : lo >= rhs - 1e-12;
}

}  // namespace

LpOutcome solve_lp(const LpModel& model) {
  const int n = model.column_count();
  detail::DenseProblem p;
  p.columns = n;
  p.upper.assign(static_cast<std::size_t>(n), 1.0);
  p.cost.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    p.cost[static_cast<std::size_t>(j)] = -model.objective[static_cast<std::size_t>(j)];

  LpOutcome outcome;
  for (const LpRow& r : model.rows) {
    const double scale = row_scale(r);
    if (scale == 0.0) {
      const bool ok = r.sense == Sense::LessEqual ? 0.0 <= r.rhs : 0.0 >= r.rhs;
      if (!ok) return outcome;
      continue;
    }
    if (implied_by_box(r, scale)) continue;
    std::vector<double> dense(static_cast<std::size_t>(n), 0.0);
    for (const auto& [col, coef] : r.terms) dense[static_cast<std::size_t>(col)] += coef / scale;
    p.rows.push_back(std::move(dense));
    p.sense.push_back(r.sense == Sense::LessEqual ? detail::RowSense::LessEqual
                                                  : detail::RowSense::GreaterEqual);
    p.rhs.push_back(r.rhs / scale);
  }

  const detail::SimplexResult res = detail::solve_dense(p);
  outcome.iterations = res.iterations;
  if (res.status == detail::SimplexStatus::Unbounded)
    throw std::logic_error("LP relaxation reported unbounded over a bounded box");
  if (res.status == detail::SimplexStatus::Infeasible) return outcome;

  outcome.status = LpStatus::Optimal;
  FractionalSolution& sol = outcome.solution;
  sol.link_count = model.link_count;
  sol.frame_length = model.frame_length;
  sol.values = res.x;
  for (double& v : sol.values) v = std::clamp(v, 0.0, 1.0);
  sol.objective = evaluate_objective(model, sol.values);
  return outcome;
}

double max_row_violation(const LpModel& model, const std::vector<double>& values) {
  double worst = 0.0;
  for (const LpRow& r : model.rows) {
    double lhs = 0.0;
    double scale = std::abs(r.rhs);
    for (const auto& [col, coef] : r.terms) {
      lhs += coef * values[static_cast<std::size_t>(col)];
      scale = std::max(scale, std::abs(coef));
    }
    scale = std::max(scale, 1e-300);
    const double v = r.sense == Sense::LessEqual ? lhs - r.rhs : r.rhs - lhs;
    worst = std::max(worst, v / scale);
  }
  return worst;
}

double evaluate_objective(const LpModel& model, const std::vector<double>& values) {
  double s = 0.0;
  for (std::size_t j = 0; j < model.objective.size(); ++j) s += model.objective[j] * values[j];
  return s;
}

}  // namespace sinrsched
