#include "infodist/game_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infodist/error.hpp"
#include "infodist/lp.hpp"

namespace infodist {

namespace {

Garbling normalized_rows(int source, int target, std::vector<double> rows) {
  for (int s = 0; s < source; ++s) {
    double sum = 0.0;
    for (int t = 0; t < target; ++t) {
      double& x = rows[static_cast<std::size_t>(s) * target + t];
      if (x < 0.0) x = 0.0;
      sum += x;
    }
    if (sum <= 0.0) {
      rows[static_cast<std::size_t>(s) * target] = 1.0;
      continue;
    }
    for (int t = 0; t < target; ++t) rows[static_cast<std::size_t>(s) * target + t] /= sum;
  }
  return Garbling(source, target, std::move(rows));
}

void require_states(const InformationStructure& u, const ZeroSumGame& g) {
  if (u.states() != g.states()) fail("ShapeMismatch", "structure and game have different state counts");
}

}  // namespace

ZeroSumGame::ZeroSumGame(int states, int actions1, int actions2, std::vector<double> payoffs,
                         double bound)
    : K_(states), I_(actions1), J_(actions2), bound_(bound), g_(std::move(payoffs)) {
  if (K_ <= 0 || I_ <= 0 || J_ <= 0) fail("ShapeMismatch", "game dimensions must be positive");
  if (g_.size() != static_cast<std::size_t>(K_) * I_ * J_)
    fail("ShapeMismatch", "payoff tensor has wrong number of entries");
  for (double x : g_) {
    if (!std::isfinite(x)) fail("ShapeMismatch", "non-finite payoff");
    if (std::abs(x) > bound_ + 1e-12)
      fail("PayoffOutOfRange", "payoff " + std::to_string(x) + " exceeds bound " + std::to_string(bound_));
  }
}

ZeroSumGame negate(const ZeroSumGame& g) {
  std::vector<double> p = g.payoffs();
  for (double& x : p) x = -x;
  return ZeroSumGame(g.states(), g.actions1(), g.actions2(), std::move(p), g.bound());
}

BimatrixGame::BimatrixGame(ZeroSumGame first, ZeroSumGame second)
    : g1(std::move(first)), g2(std::move(second)) {
  if (g1.states() != g2.states() || g1.actions1() != g2.actions1() || g1.actions2() != g2.actions2())
    fail("ShapeMismatch", "bimatrix components have different shapes");
}

ValueResult value(const InformationStructure& u, const ZeroSumGame& g) {
  require_states(u, g);
  const int K = u.states(), C = u.signals1(), D = u.signals2();
  const int I = g.actions1(), J = g.actions2();

  lp::Problem p;
  p.sense = lp::ObjSense::Maximize;
  const int sigma0 = 0;
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < I; ++i) p.add_variable(0.0, 0.0, lp::kInf);
  const int z0 = p.num_cols();
  for (int d = 0; d < D; ++d) p.add_variable(1.0, -lp::kInf, lp::kInf);

  for (int c = 0; c < C; ++c) {
    const int r = p.add_row(lp::RowSense::Eq, 1.0);
    for (int i = 0; i < I; ++i) p.add_entry(r, sigma0 + c * I + i, 1.0);
  }
  const int br0 = p.num_rows();
  for (int d = 0; d < D; ++d)
    for (int j = 0; j < J; ++j) {
      const int r = p.add_row(lp::RowSense::Le, 0.0);
      p.add_entry(r, z0 + d, 1.0);
      for (int c = 0; c < C; ++c) {
        bool any = false;
        for (int k = 0; k < K; ++k) any = any || u(k, c, d) > 0.0;
        if (!any) continue;
        for (int i = 0; i < I; ++i) {
          double a = 0.0;
          for (int k = 0; k < K; ++k) a += u(k, c, d) * g(k, i, j);
          if (a != 0.0) p.add_entry(r, sigma0 + c * I + i, -a);
        }
      }
    }

  const lp::Solution s = lp::solve(p);
  if (s.status != lp::Status::Optimal)
    fail("NumericalFailure", "game LP reported " + lp::to_string(s.status));

  std::vector<double> sigma(static_cast<std::size_t>(C) * I), tau(static_cast<std::size_t>(D) * J);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < I; ++i) sigma[static_cast<std::size_t>(c) * I + i] = s.primal[sigma0 + c * I + i];
  for (int d = 0; d < D; ++d)
    for (int j = 0; j < J; ++j) tau[static_cast<std::size_t>(d) * J + j] = s.row_duals[br0 + d * J + j];
  ValueResult out{s.objective, s.dual_objective, normalized_rows(C, I, std::move(sigma)),
                  normalized_rows(D, J, std::move(tau))};
  return out;
}

double guarantee(const InformationStructure& u, const ZeroSumGame& g, const Garbling& strategy,
                 Side side) {
  require_states(u, g);
  const int K = u.states(), C = u.signals1(), D = u.signals2();
  const int I = g.actions1(), J = g.actions2();
  double total = 0.0;
  if (side == Side::Player1) {
    if (strategy.source() != C || strategy.target() != I)
      fail("ShapeMismatch", "player-1 strategy shape does not match signals x actions");
    std::vector<double> pay(J);
    for (int d = 0; d < D; ++d) {
      std::fill(pay.begin(), pay.end(), 0.0);
      for (int k = 0; k < K; ++k)
        for (int c = 0; c < C; ++c) {
          const double w = u(k, c, d);
          if (w == 0.0) continue;
          for (int i = 0; i < I; ++i) {
            const double ws = w * strategy(c, i);
            if (ws == 0.0) continue;
            for (int j = 0; j < J; ++j) pay[j] += ws * g(k, i, j);
          }
        }
      total += *std::min_element(pay.begin(), pay.end());
    }
    return total;
  }
  if (strategy.source() != D || strategy.target() != J)
    fail("ShapeMismatch", "player-2 strategy shape does not match signals x actions");
  std::vector<double> pay(I);
  for (int c = 0; c < C; ++c) {
    std::fill(pay.begin(), pay.end(), 0.0);
    for (int k = 0; k < K; ++k)
      for (int d = 0; d < D; ++d) {
        const double w = u(k, c, d);
        if (w == 0.0) continue;
        for (int j = 0; j < J; ++j) {
          const double wt = w * strategy(d, j);
          if (wt == 0.0) continue;
          for (int i = 0; i < I; ++i) pay[i] += wt * g(k, i, j);
        }
      }
    total += *std::max_element(pay.begin(), pay.end());
  }
  return total;
}

Garbling transport_strategy(const Garbling& strategy, const Garbling& q) {
  if (q.target() != strategy.source())
    fail("ShapeMismatch", "garbling target must equal the strategy's signal count");
  return compose_garblings(strategy, q);
}

std::pair<double, double> minmax_levels(const InformationStructure& u, const BimatrixGame& g) {
  const double m1 = value(u, g.g1).value;
  const double m2 = -value(u, negate(g.g2)).value;
  return {m1, m2};
}

MatrixGameResult solve_matrix_game(const std::vector<double>& A, int rows, int cols) {
  if (rows <= 0 || cols <= 0 || A.size() != static_cast<std::size_t>(rows) * cols)
    fail("ShapeMismatch", "matrix game dimensions");
  lp::Problem p;
  p.sense = lp::ObjSense::Maximize;
  for (int i = 0; i < rows; ++i) p.add_variable(0.0);
  const int v = p.add_variable(1.0, -lp::kInf, lp::kInf);
  const int sum_row = p.add_row(lp::RowSense::Eq, 1.0);
  for (int i = 0; i < rows; ++i) p.add_entry(sum_row, i, 1.0);
  for (int j = 0; j < cols; ++j) {
    const int r = p.add_row(lp::RowSense::Le, 0.0);
    p.add_entry(r, v, 1.0);
    for (int i = 0; i < rows; ++i) {
      const double a = A[static_cast<std::size_t>(i) * cols + j];
      if (a != 0.0) p.add_entry(r, i, -a);
    }
  }
  const lp::Solution s = lp::solve(p);
  if (s.status != lp::Status::Optimal) fail("NumericalFailure", "matrix game LP not optimal");
  MatrixGameResult out;
  out.value = s.objective;
  out.row_strategy.assign(s.primal.begin(), s.primal.begin() + rows);
  out.col_strategy.assign(cols, 0.0);
  for (int j = 0; j < cols; ++j) out.col_strategy[j] = std::max(0.0, s.row_duals[1 + j]);
  return out;
}

double pure_profile_payoff(const InformationStructure& u, const ZeroSumGame& g,
                           const std::vector<int>& rule1, const std::vector<int>& rule2) {
  double s = 0.0;
  for (int k = 0; k < u.states(); ++k)
    for (int c = 0; c < u.signals1(); ++c)
      for (int d = 0; d < u.signals2(); ++d) {
        const double w = u(k, c, d);
        if (w != 0.0) s += w * g(k, rule1[c], rule2[d]);
      }
  return s;
}

double normal_form_value(const InformationStructure& u, const ZeroSumGame& g, double budget) {
  require_states(u, g);
  const int C = u.signals1(), D = u.signals2(), I = g.actions1(), J = g.actions2();
  const double n1 = std::pow(static_cast<double>(I), C), n2 = std::pow(static_cast<double>(J), D);
  if (n1 * n2 > budget)
    fail("BudgetExceeded", "normal form has " + std::to_string(n1 * n2) + " cells");
  const int R = static_cast<int>(n1), S = static_cast<int>(n2);
  auto decode = [](int code, int base, int len) {
    std::vector<int> r(len);
    for (int x = len - 1; x >= 0; --x) {
      r[x] = code % base;
      code /= base;
    }
    return r;
  };
  std::vector<double> M(static_cast<std::size_t>(R) * S);
  std::vector<std::vector<int>> rules2;
  for (int b = 0; b < S; ++b) rules2.push_back(decode(b, J, D));
  for (int a = 0; a < R; ++a) {
    const auto r1 = decode(a, I, C);
    for (int b = 0; b < S; ++b) M[static_cast<std::size_t>(a) * S + b] = pure_profile_payoff(u, g, r1, rules2[b]);
  }
  return solve_matrix_game(M, R, S).value;
}

}  // namespace infodist
