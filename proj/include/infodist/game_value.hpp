#pragma once

#include <utility>
#include <vector>

#include "infodist/prob_core.hpp"

namespace infodist {

// Zero-sum payoff g(k, i, j) to the maximizer (player 1), stored k outer,
// i middle, j inner. Entries must lie in [-bound, bound]; bound is 1 except
// for internally built games whose own bound was verified at construction.
class ZeroSumGame {
 public:
  ZeroSumGame(int states, int actions1, int actions2, std::vector<double> payoffs,
              double bound = 1.0);

  int states() const { return K_; }
  int actions1() const { return I_; }
  int actions2() const { return J_; }
  double bound() const { return bound_; }
  const std::vector<double>& payoffs() const { return g_; }
  double operator()(int k, int i, int j) const {
    return g_[(static_cast<std::size_t>(k) * I_ + i) * J_ + j];
  }

 private:
  int K_, I_, J_;
  double bound_;
  std::vector<double> g_;
};

ZeroSumGame negate(const ZeroSumGame& g);

struct BimatrixGame {
  ZeroSumGame g1;
  ZeroSumGame g2;
  BimatrixGame(ZeroSumGame first, ZeroSumGame second);
};

struct ValueResult {
  double value = 0.0;
  double dual_value = 0.0;  // player-2 side of the same LP
  Garbling strategy1;       // sigma(i | c)
  Garbling strategy2;       // tau(j | d)
};

ValueResult value(const InformationStructure& u, const ZeroSumGame& g);

// Payoff the fixed strategy secures against a best-responding opponent.
// side = Player1: strategy is sigma(i|c), returns sum_d min_j (...).
// side = Player2: strategy is tau(j|d), returns sum_c max_i (...).
double guarantee(const InformationStructure& u, const ZeroSumGame& g, const Garbling& strategy,
                 Side side);

// sigma.q(c) = sum_{c'} q(c'|c) sigma(c')
Garbling transport_strategy(const Garbling& strategy, const Garbling& q);

// (m1, m2) = (val(u, g1), -val(u, -g2))
std::pair<double, double> minmax_levels(const InformationStructure& u, const BimatrixGame& g);

struct MatrixGameResult {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
};

// Row player maximizes x^T A y; A is rows x cols, row-major.
MatrixGameResult solve_matrix_game(const std::vector<double>& A, int rows, int cols);

// Value of the normal form over pure decision rules (|I|^|C| x |J|^|D|).
// Throws BudgetExceeded when the matrix would exceed `budget` cells.
double normal_form_value(const InformationStructure& u, const ZeroSumGame& g,
                         double budget = 4e6);

// Expected payoff of the pure decision rules rule1[c], rule2[d].
double pure_profile_payoff(const InformationStructure& u, const ZeroSumGame& g,
                           const std::vector<int>& rule1, const std::vector<int>& rule2);

}  // namespace infodist
