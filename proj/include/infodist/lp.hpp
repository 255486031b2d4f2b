#pragma once

#include <limits>
#include <string>
#include <vector>

namespace infodist::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { Le, Eq, Ge };
enum class ObjSense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded };

std::string to_string(Status s);

struct Triplet {
  int row;
  int col;
  double value;
};

struct Problem {
  ObjSense sense = ObjSense::Minimize;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<RowSense> row_sense;
  std::vector<double> rhs;
  std::vector<Triplet> entries;  // duplicates are summed

  int add_variable(double cost, double lo = 0.0, double hi = kInf);
  int add_row(RowSense sense, double rhs_value);
  void add_entry(int row, int col, double value) { entries.push_back({row, col, value}); }

  int num_cols() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> primal;
  // d objective / d rhs_i, in the problem's own sense.
  std::vector<double> row_duals;
  // c_j - A_j^T y, same sense convention.
  std::vector<double> reduced_costs;
  double objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double complementarity = 0.0;
  int iterations = 0;
};

struct Options {
  double primal_tol = 1e-8;
  double dual_tol = 1e-8;
  double gap_tol = 1e-8;
  double complementarity_tol = 1e-7;
  int degenerate_streak = 50;  // switch to Bland's rule after this many
  long max_iterations = 0;     // 0: derived from problem size
};

// Two-phase dense simplex with deterministic pricing. Throws
// Error("NumericalFailure") when the final residuals miss the tolerances.
Solution solve(const Problem& p, const Options& opt = {});

}  // namespace infodist::lp
