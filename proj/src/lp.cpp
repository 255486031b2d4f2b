#include "infodist/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "infodist/error.hpp"

namespace infodist::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
  }
  return "?";
}

int Problem::add_variable(double cost, double lo, double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return num_cols() - 1;
}

int Problem::add_row(RowSense sense, double rhs_value) {
  row_sense.push_back(sense);
  rhs.push_back(rhs_value);
  return num_rows() - 1;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

// How an original variable is expressed with nonnegative standard-form columns.
enum class VarKind { Shift, Mirror, Split };

struct VarMap {
  VarKind kind;
  int col;       // standard-form column (x' or x+)
  int col2 = -1; // x- for Split
  double offset; // l for Shift, u for Mirror
};

struct StandardForm {
  int m = 0;               // rows
  int n = 0;               // structural + slack columns
  std::vector<double> A;   // m x (n + m) incl. artificial columns, row-major
  std::vector<double> b;
  std::vector<double> c;   // phase-2 costs (minimization), size n + m
  std::vector<int> orig_row;  // standard row -> original row, -1 for bound rows
  std::vector<double> row_sign;  // +1 or -1 (flip to make b >= 0)
  std::vector<int> initial_basis;
  std::vector<bool> needs_artificial;
  std::vector<VarMap> vars;
  int width() const { return n + m; }
  double& at(int i, int j) { return A[static_cast<std::size_t>(i) * width() + j]; }
  double at(int i, int j) const { return A[static_cast<std::size_t>(i) * width() + j]; }
};

StandardForm build_standard_form(const Problem& p) {
  const int ncols = p.num_cols();
  const int nrows = p.num_rows();
  if (static_cast<int>(p.lower.size()) != ncols || static_cast<int>(p.upper.size()) != ncols ||
      static_cast<int>(p.row_sense.size()) != nrows)
    fail("ShapeMismatch", "LP problem has inconsistent dimensions");
  for (double x : p.objective)
    if (!std::isfinite(x)) fail("ShapeMismatch", "non-finite objective coefficient");
  for (double x : p.rhs)
    if (!std::isfinite(x)) fail("ShapeMismatch", "non-finite right-hand side");

  StandardForm sf;
  const double sgn = p.sense == ObjSense::Minimize ? 1.0 : -1.0;

  // Column layout: structural columns first.
  int col = 0;
  std::vector<double> cost;
  struct BoundRow { int col; double ub; };
  std::vector<BoundRow> bound_rows;
  for (int j = 0; j < ncols; ++j) {
    const double lo = p.lower[j], hi = p.upper[j];
    if (lo > hi) fail("ShapeMismatch", "variable lower bound exceeds upper bound");
    VarMap vm{};
    if (std::isfinite(lo)) {
      vm = {VarKind::Shift, col++, -1, lo};
      cost.push_back(sgn * p.objective[j]);
      if (std::isfinite(hi)) bound_rows.push_back({vm.col, hi - lo});
    } else if (std::isfinite(hi)) {
      vm = {VarKind::Mirror, col++, -1, hi};
      cost.push_back(-sgn * p.objective[j]);
    } else {
      vm = {VarKind::Split, col, col + 1, 0.0};
      col += 2;
      cost.push_back(sgn * p.objective[j]);
      cost.push_back(-sgn * p.objective[j]);
    }
    sf.vars.push_back(vm);
  }
  const int nstruct = col;

  // Dense row images of the original constraints in structural columns.
  std::vector<std::vector<double>> rows(nrows, std::vector<double>(nstruct, 0.0));
  std::vector<double> rhs = p.rhs;
  for (const auto& t : p.entries) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
      fail("ShapeMismatch", "LP entry index out of range");
    if (!std::isfinite(t.value)) fail("ShapeMismatch", "non-finite constraint coefficient");
    const VarMap& vm = sf.vars[t.col];
    switch (vm.kind) {
      case VarKind::Shift:
        rows[t.row][vm.col] += t.value;
        rhs[t.row] -= t.value * vm.offset;
        break;
      case VarKind::Mirror:
        rows[t.row][vm.col] -= t.value;
        rhs[t.row] -= t.value * vm.offset;
        break;
      case VarKind::Split:
        rows[t.row][vm.col] += t.value;
        rows[t.row][vm.col2] -= t.value;
        break;
    }
  }

  std::vector<RowSense> senses = p.row_sense;
  std::vector<int> orig(nrows);
  for (int i = 0; i < nrows; ++i) orig[i] = i;
  for (const auto& br : bound_rows) {
    std::vector<double> r(nstruct, 0.0);
    r[br.col] = 1.0;
    rows.push_back(std::move(r));
    rhs.push_back(br.ub);
    senses.push_back(RowSense::Le);
    orig.push_back(-1);
  }

  const int m = static_cast<int>(rows.size());
  int nslack = 0;
  for (RowSense s : senses)
    if (s != RowSense::Eq) ++nslack;
  sf.m = m;
  sf.n = nstruct + nslack;
  sf.A.assign(static_cast<std::size_t>(m) * sf.width(), 0.0);
  sf.b.assign(m, 0.0);
  sf.c.assign(sf.width(), 0.0);
  for (int j = 0; j < nstruct; ++j) sf.c[j] = cost[j];
  sf.orig_row = orig;
  sf.row_sign.assign(m, 1.0);
  sf.initial_basis.assign(m, -1);
  sf.needs_artificial.assign(m, false);

  int slack = nstruct;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nstruct; ++j) sf.at(i, j) = rows[i][j];
    int slack_col = -1;
    if (senses[i] == RowSense::Le) {
      slack_col = slack++;
      sf.at(i, slack_col) = 1.0;
    } else if (senses[i] == RowSense::Ge) {
      slack_col = slack++;
      sf.at(i, slack_col) = -1.0;
    }
    sf.b[i] = rhs[i];
    if (sf.b[i] < 0.0) {
      sf.row_sign[i] = -1.0;
      sf.b[i] = -sf.b[i];
      for (int j = 0; j < sf.n; ++j) sf.at(i, j) = -sf.at(i, j);
    }
    if (slack_col >= 0 && sf.at(i, slack_col) > 0.0) {
      sf.initial_basis[i] = slack_col;
    } else {
      sf.needs_artificial[i] = true;
      sf.initial_basis[i] = sf.n + i;
    }
    sf.at(i, sf.n + i) = 1.0;  // artificial column (unused when a slack is basic)
  }
  return sf;
}

class Tableau {
 public:
  Tableau(const StandardForm& sf) : m_(sf.m), w_(sf.width()), basis_(sf.initial_basis) {
    T_.assign(static_cast<std::size_t>(m_ + 1) * (w_ + 1), 0.0);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < w_; ++j) at(i, j) = sf.at(i, j);
      at(i, w_) = sf.b[i];
    }
    allowed_.assign(w_, true);
    for (int i = 0; i < m_; ++i)
      if (!sf.needs_artificial[i]) allowed_[sf.n + i] = false;  // never-used artificial
  }

  double& at(int i, int j) { return T_[static_cast<std::size_t>(i) * (w_ + 1) + j]; }
  double at(int i, int j) const { return T_[static_cast<std::size_t>(i) * (w_ + 1) + j]; }
  double& obj(int j) { return at(m_, j); }
  const std::vector<int>& basis() const { return basis_; }
  void forbid(int j) { allowed_[j] = false; }
  bool allowed(int j) const { return allowed_[j]; }

  // Objective row from costs: r_j = c_j - c_B^T T_j; rhs slot holds -c_B^T x_B.
  void price(const std::vector<double>& c) {
    for (int j = 0; j <= w_; ++j) obj(j) = j < w_ ? c[j] : 0.0;
    for (int i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j <= w_; ++j) obj(j) -= cb * at(i, j);
    }
  }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    double* prow = &at(pr, 0);
    for (int j = 0; j <= w_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == pr) continue;
      double* row = &at(i, 0);
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int j = 0; j <= w_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
      if (i < m_ && row[w_] < 0.0 && row[w_] > -1e-11) row[w_] = 0.0;
    }
    basis_[pr] = pc;
  }

  enum class Outcome { Optimal, Unbounded, IterationLimit };

  Outcome run(int degenerate_limit, long max_iter, long& iterations) {
    bool bland = false;
    int streak = 0;
    while (true) {
      if (iterations >= max_iter) return Outcome::IterationLimit;
      int pc = -1;
      double best = -kCostTol;
      for (int j = 0; j < w_; ++j) {
        if (!allowed_[j]) continue;
        const double r = obj(j);
        if (bland) {
          if (r < -kCostTol) { pc = j; break; }
        } else if (r < best) {
          best = r;
          pc = j;
        }
      }
      if (pc < 0) return Outcome::Optimal;
      int pr = -1;
      double ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, pc);
        if (a <= kPivotTol) continue;
        const double r = std::max(at(i, w_), 0.0) / a;
        if (pr < 0 || r < ratio - 1e-12) {
          pr = i;
          ratio = r;
        } else if (r <= ratio + 1e-12) {
          const bool better = bland ? basis_[i] < basis_[pr]
                                    : (a > at(pr, pc) * (1 + 1e-9) ||
                                       (a >= at(pr, pc) * (1 - 1e-9) && basis_[i] < basis_[pr]));
          if (better) {
            pr = i;
            ratio = std::min(ratio, r);
          }
        }
      }
      if (pr < 0) return Outcome::Unbounded;
      if (ratio <= 1e-12) {
        if (++streak > degenerate_limit) bland = true;
      } else {
        streak = 0;
      }
      pivot(pr, pc);
      ++iterations;
    }
  }

  int m() const { return m_; }
  int width() const { return w_; }

 private:
  int m_;
  int w_;
  std::vector<double> T_;
  std::vector<int> basis_;
  std::vector<bool> allowed_;
};

void evaluate(const Problem& p, Solution& s) {
  const int ncols = p.num_cols(), nrows = p.num_rows();
  const double sgn = p.sense == ObjSense::Minimize ? 1.0 : -1.0;
  std::vector<double> ax(nrows, 0.0), aty(ncols, 0.0);
  for (const auto& t : p.entries) {
    ax[t.row] += t.value * s.primal[t.col];
    aty[t.col] += t.value * s.row_duals[t.row];
  }
  s.objective = 0.0;
  for (int j = 0; j < ncols; ++j) s.objective += p.objective[j] * s.primal[j];

  double pres = 0.0, dres = 0.0, comp = 0.0;
  double dual_obj = 0.0;
  for (int i = 0; i < nrows; ++i) {
    const double slack = ax[i] - p.rhs[i];
    const double y = s.row_duals[i];
    switch (p.row_sense[i]) {
      case RowSense::Le:
        pres = std::max(pres, slack);
        dres = std::max(dres, sgn * y);
        break;
      case RowSense::Ge:
        pres = std::max(pres, -slack);
        dres = std::max(dres, -sgn * y);
        break;
      case RowSense::Eq:
        pres = std::max(pres, std::abs(slack));
        break;
    }
    if (p.row_sense[i] != RowSense::Eq) comp = std::max(comp, std::abs(y * slack));
    dual_obj += p.rhs[i] * y;
  }
  s.reduced_costs.assign(ncols, 0.0);
  for (int j = 0; j < ncols; ++j) {
    const double d = p.objective[j] - aty[j];
    s.reduced_costs[j] = d;
    const double lo = p.lower[j], hi = p.upper[j], x = s.primal[j];
    if (std::isfinite(lo)) pres = std::max(pres, lo - x);
    if (std::isfinite(hi)) pres = std::max(pres, x - hi);
    const double sd = sgn * d;  // >= 0 means the variable prefers its lower bound
    if (sd >= 0.0) {
      if (std::isfinite(lo)) {
        dual_obj += d * lo;
        comp = std::max(comp, std::abs(d * (x - lo)));
      } else {
        dres = std::max(dres, sd);
      }
    } else {
      if (std::isfinite(hi)) {
        dual_obj += d * hi;
        comp = std::max(comp, std::abs(d * (hi - x)));
      } else {
        dres = std::max(dres, -sd);
      }
    }
  }
  s.dual_objective = dual_obj;
  s.primal_residual = pres;
  s.dual_residual = dres;
  s.complementarity = comp;
}

}  // namespace

Solution solve(const Problem& p, const Options& opt) {
  StandardForm sf = build_standard_form(p);
  Tableau tab(sf);
  const int m = sf.m, w = sf.width();
  long iterations = 0;
  const long max_iter =
      opt.max_iterations > 0 ? opt.max_iterations : std::max<long>(20000, 50L * (m + w));

  // Phase 1: minimize the sum of artificials.
  bool any_artificial = false;
  std::vector<double> c1(w, 0.0);
  for (int i = 0; i < m; ++i)
    if (sf.needs_artificial[i]) {
      c1[sf.n + i] = 1.0;
      any_artificial = true;
    }
  Solution sol;
  if (any_artificial) {
    tab.price(c1);
    if (tab.run(opt.degenerate_streak, max_iter, iterations) == Tableau::Outcome::IterationLimit)
      fail("NumericalFailure", "simplex iteration limit reached in phase 1");
    double bmax = 1.0;
    for (double x : sf.b) bmax = std::max(bmax, std::abs(x));
    if (-tab.obj(w) > 1e-9 * bmax) {
      sol.status = Status::Infeasible;
      sol.iterations = static_cast<int>(iterations);
      return sol;
    }
    // Drive basic artificials out where possible; the rest sit on redundant rows.
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] < sf.n) continue;
      int best = -1;
      double amax = 1e-9;
      for (int j = 0; j < sf.n; ++j)
        if (std::abs(tab.at(i, j)) > amax) {
          amax = std::abs(tab.at(i, j));
          best = j;
        }
      if (best >= 0) tab.pivot(i, best);
    }
    for (int i = 0; i < m; ++i) tab.forbid(sf.n + i);
  }

  tab.price(sf.c);
  const auto outcome = tab.run(opt.degenerate_streak, max_iter, iterations);
  if (outcome == Tableau::Outcome::IterationLimit)
    fail("NumericalFailure", "simplex iteration limit reached in phase 2");
  sol.iterations = static_cast<int>(iterations);
  if (outcome == Tableau::Outcome::Unbounded) {
    sol.status = Status::Unbounded;
    return sol;
  }

  // Standard-form basic solution, polished by refactorizing the basis.
  std::vector<double> xs(w, 0.0), ys(m, 0.0);
  const auto& basis = tab.basis();
  for (int i = 0; i < m; ++i) xs[basis[i]] = std::max(tab.at(i, w), 0.0);
  if (m > 0) {
    Eigen::MatrixXd B(m, m);
    Eigen::VectorXd b(m), cb(m);
    for (int i = 0; i < m; ++i) {
      for (int r = 0; r < m; ++r) B(r, i) = sf.at(r, basis[i]);
      cb(i) = basis[i] < sf.n ? sf.c[basis[i]] : 0.0;
      b(i) = sf.b[i];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Eigen::VectorXd xb = lu.solve(b);
    Eigen::VectorXd y = lu.transpose().solve(cb);
    const double err = (B * xb - b).cwiseAbs().maxCoeff() + (B.transpose() * y - cb).cwiseAbs().maxCoeff();
    if (std::isfinite(err) && err < 1e-9) {
      for (int i = 0; i < m; ++i) xs[basis[i]] = std::max(xb(i), 0.0);
      for (int i = 0; i < m; ++i) ys[i] = y(i);
    } else {
      // Fall back on the tableau: y_i = c_B B^{-1} e_i read from the artificial columns.
      for (int i = 0; i < m; ++i) ys[i] = -tab.obj(sf.n + i);
    }
  }

  const double sgn = p.sense == ObjSense::Minimize ? 1.0 : -1.0;
  sol.status = Status::Optimal;
  sol.primal.assign(p.num_cols(), 0.0);
  for (int j = 0; j < p.num_cols(); ++j) {
    const VarMap& vm = sf.vars[j];
    switch (vm.kind) {
      case VarKind::Shift: sol.primal[j] = vm.offset + xs[vm.col]; break;
      case VarKind::Mirror: sol.primal[j] = vm.offset - xs[vm.col]; break;
      case VarKind::Split: sol.primal[j] = xs[vm.col] - xs[vm.col2]; break;
    }
  }
  sol.row_duals.assign(p.num_rows(), 0.0);
  for (int i = 0; i < m; ++i)
    if (sf.orig_row[i] >= 0) sol.row_duals[sf.orig_row[i]] = sgn * sf.row_sign[i] * ys[i];

  evaluate(p, sol);
  double bscale = 1.0;
  for (double x : p.rhs) bscale = std::max(bscale, std::abs(x));
  const double gap = std::abs(sol.objective - sol.dual_objective);
  if (sol.primal_residual > opt.primal_tol * bscale || sol.dual_residual > opt.dual_tol ||
      gap > opt.gap_tol * (1.0 + std::abs(sol.objective)) ||
      sol.complementarity > opt.complementarity_tol)
    fail("NumericalFailure", "LP residuals out of tolerance: primal " +
                                 std::to_string(sol.primal_residual) + ", dual " +
                                 std::to_string(sol.dual_residual) + ", gap " + std::to_string(gap) +
                                 ", complementarity " + std::to_string(sol.complementarity));
  return sol;
}

}  // namespace infodist::lp
