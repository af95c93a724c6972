#include "simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace sinrsched::detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;
constexpr double kPhaseOneTol = 1e-9;

// Full tableau B^-1 [A | S | R] with the reduced-cost row kept alongside.
// Nonbasic variables sit at 0 or at their upper bound.
class Tableau {
 public:
  explicit Tableau(const DenseProblem& p) : m_(p.rows.size()), structural_(p.columns) {
    std::size_t artificials = 0;
    std::vector<bool> needs_art(m_);
    std::vector<double> sign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double slack = p.sense[i] == RowSense::LessEqual ? 1.0 : -1.0;
      if (p.rhs[i] < 0.0) {
        sign[i] = -1.0;
        slack = -slack;
      }
      needs_art[i] = slack < 0.0;
      if (needs_art[i]) ++artificials;
    }
    first_slack_ = structural_;
    first_art_ = structural_ + m_;
    n_ = first_art_ + artificials;

    t_.assign(m_ * n_, 0.0);
    upper_.assign(n_, kInf);
    value_.assign(n_, 0.0);
    at_upper_.assign(n_, false);
    is_basic_.assign(n_, false);
    basis_.assign(m_, 0);
    for (std::size_t j = 0; j < structural_; ++j) upper_[j] = p.upper[j];

    std::size_t art = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      double* row = &t_[i * n_];
      for (std::size_t j = 0; j < structural_; ++j) row[j] = sign[i] * p.rows[i][j];
      const double slack = sign[i] * (p.sense[i] == RowSense::LessEqual ? 1.0 : -1.0);
      row[first_slack_ + i] = slack;
      std::size_t basic = first_slack_ + i;
      if (needs_art[i]) {
        row[art] = 1.0;
        basic = art++;
      }
      basis_[i] = basic;
      is_basic_[basic] = true;
      value_[basic] = sign[i] * p.rhs[i];
    }
  }

  bool has_artificials() const { return n_ > first_art_; }

  // Returns false when the objective is unbounded below.
  bool minimise(const std::vector<double>& cost, int& iterations) {
    price(cost);
    for (;;) {
      const std::size_t enter = choose_entering();
      if (enter == n_) return true;
      ++iterations;
      if (!step(enter)) return false;
    }
  }

  double artificial_sum() const {
    double s = 0.0;
    for (std::size_t j = first_art_; j < n_; ++j) s += value_[j];
    return s;
  }

  void fix_artificials() {
    for (std::size_t j = first_art_; j < n_; ++j) upper_[j] = 0.0;
  }

  std::size_t size() const { return n_; }
  std::size_t structural() const { return structural_; }
  double value(std::size_t j) const { return value_[j]; }

 private:
  void price(const std::vector<double>& cost) {
    cost_ = cost;
    reduced_ = cost;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &t_[i * n_];
      for (std::size_t j = 0; j < n_; ++j) reduced_[j] -= cb * row[j];
    }
  }

  // Bland: lowest index with an improving reduced cost.
  std::size_t choose_entering() const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic_[j] || upper_[j] == 0.0) continue;
      if (!at_upper_[j] && reduced_[j] < -kCostTol) return j;
      if (at_upper_[j] && reduced_[j] > kCostTol) return j;
    }
    return n_;
  }

  bool step(std::size_t enter) {
    const double dir = at_upper_[enter] ? -1.0 : 1.0;
    double theta = upper_[enter];
    std::size_t leave_row = m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = dir * t_[i * n_ + enter];
      const std::size_t b = basis_[i];
      double ratio;
      if (a > kPivotTol) {
        ratio = std::max(0.0, value_[b]) / a;
      } else if (a < -kPivotTol && upper_[b] < kInf) {
        ratio = std::max(0.0, upper_[b] - value_[b]) / -a;
      } else {
        continue;
      }
      if (ratio < theta - kRatioTieTol) {
        theta = ratio;
        leave_row = i;
      } else if (leave_row != m_ && ratio <= theta + kRatioTieTol && b < basis_[leave_row]) {
        leave_row = i;
      }
    }
    if (theta == kInf) return false;

    for (std::size_t i = 0; i < m_; ++i) value_[basis_[i]] -= theta * dir * t_[i * n_ + enter];
    value_[enter] += dir * theta;

    if (leave_row == m_) {
      at_upper_[enter] = !at_upper_[enter];
      value_[enter] = at_upper_[enter] ? upper_[enter] : 0.0;
      return true;
    }

    const std::size_t leave = basis_[leave_row];
    const bool leaves_at_upper = dir * t_[leave_row * n_ + enter] < 0.0;
    value_[leave] = leaves_at_upper ? upper_[leave] : 0.0;
    at_upper_[leave] = leaves_at_upper;
    is_basic_[leave] = false;
    is_basic_[enter] = true;
    at_upper_[enter] = false;
    basis_[leave_row] = enter;
    pivot(leave_row, enter);
    return true;
  }

  void pivot(std::size_t r, std::size_t c) {
    double* prow = &t_[r * n_];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < n_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * n_];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    const double f = reduced_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < n_; ++j) reduced_[j] -= f * prow[j];
      reduced_[c] = 0.0;
    }
  }

  std::size_t m_;
  std::size_t structural_;
  std::size_t first_slack_ = 0;
  std::size_t first_art_ = 0;
  std::size_t n_ = 0;
  std::vector<double> t_;
  std::vector<double> upper_;
  std::vector<double> value_;
  std::vector<bool> at_upper_;
  std::vector<bool> is_basic_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
};

}  // namespace

SimplexResult solve_dense(const DenseProblem& p) {
  if (p.cost.size() != static_cast<std::size_t>(p.columns) ||
      p.upper.size() != static_cast<std::size_t>(p.columns) || p.sense.size() != p.rows.size() ||
      p.rhs.size() != p.rows.size())
    throw std::invalid_argument("inconsistent dense LP dimensions");

  SimplexResult result;
  Tableau tab(p);

  if (tab.has_artificials()) {
    std::vector<double> phase_one(tab.size(), 0.0);
    for (std::size_t j = tab.structural() + p.rows.size(); j < tab.size(); ++j) phase_one[j] = 1.0;
    if (!tab.minimise(phase_one, result.iterations))
      throw std::logic_error("phase one cannot be unbounded");
    if (tab.artificial_sum() > kPhaseOneTol) {
      result.status = SimplexStatus::Infeasible;
      return result;
    }
    tab.fix_artificials();
  }

  std::vector<double> cost(tab.size(), 0.0);
  for (int j = 0; j < p.columns; ++j) cost[static_cast<std::size_t>(j)] = p.cost[static_cast<std::size_t>(j)];
  if (!tab.minimise(cost, result.iterations)) {
    result.status = SimplexStatus::Unbounded;
    return result;
  }

  result.status = SimplexStatus::Optimal;
  result.x.resize(static_cast<std::size_t>(p.columns));
  for (int j = 0; j < p.columns; ++j) {
    result.x[static_cast<std::size_t>(j)] = tab.value(static_cast<std::size_t>(j));
    result.objective += p.cost[static_cast<std::size_t>(j)] * result.x[static_cast<std::size_t>(j)];
  }
  return result;
}

}  // namespace sinrsched::detail
