#pragma once

// Dense bounded-variable primal simplex (two phase, Bland's rule).
// Internal to the library; lp.cpp adapts LpModel onto it.

#include <vector>

namespace sinrsched::detail {

enum class RowSense { LessEqual, GreaterEqual };

struct DenseProblem {
  int columns = 0;
  std::vector<double> cost;   // minimised
  std::vector<double> upper;  // lower bounds are 0
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> sense;
  std::vector<double> rhs;
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

SimplexResult solve_dense(const DenseProblem& problem);

}  // namespace sinrsched::detail
