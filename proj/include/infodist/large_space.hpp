#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infodist/game_value.hpp"
#include "infodist/prob_core.hpp"

namespace infodist {

// Symbols 1..N are stored 0-based throughout; only is_nice and g0 take the
// 1-based values.
class MixingMatrix {
 public:
  // rows[a] lists S(a); each row must hold exactly N/2 distinct columns.
  MixingMatrix(int N, const std::vector<std::vector<int>>& rows);

  int size() const { return N_; }
  int words() const { return W_; }
  bool operator()(int a, int b) const { return (rows_[a * W_ + (b >> 6)] >> (b & 63)) & 1u; }
  const std::uint64_t* row_bits(int a) const { return &rows_[static_cast<std::size_t>(a) * W_]; }
  const std::uint64_t* col_bits(int b) const { return &cols_[static_cast<std::size_t>(b) * W_]; }
  std::vector<int> row(int a) const;

 private:
  int N_, W_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cols_;
};

// Each row an independent uniform N/2-subset; bit-identical for a seed.
MixingMatrix sample_S(int N, std::uint64_t seed);

struct MarkovWorld {
  MixingMatrix S;
  double epsilon;
  double alpha;
  // Throws InvalidParameters unless 0 < epsilon < 1/(10 (N+1)^2).
  MarkovWorld(MixingMatrix matrix, double eps, double a = 1.0 / 25.0);
  static double default_epsilon(int N) { return 1.0 / (20.0 * (N + 1) * (N + 1)); }
};

enum class Niceness { Nice, NotNiceP1, NotNiceP2 };
std::string to_string(Niceness n);

// seq holds symbols in 1..N; throws InvalidSymbol otherwise.
Niceness is_nice(const std::vector<int>& seq, const MixingMatrix& S);

// Nice sequences (c1, d1, ..., cl, dl) of length 2l with their nu mass.
struct SequenceSupport {
  int N = 0;
  int l = 0;
  std::vector<std::vector<int>> atoms;
  std::vector<double> nu;
};

SequenceSupport nice_sequences(const MixingMatrix& S, int l, double budget = 1e7);

// Dense u^l over K = {0, 1}, C^l x D^l, first symbol most significant.
InformationStructure build_structure_ul(const MarkovWorld& world, int l, double budget = 4e6);

// g0(k, s) for the 1-based symbol s.
double g0(int N, int k, int s);

// Actions C^p for player 1 and D^(p-1) for player 2.
ZeroSumGame build_game_gp(const MarkovWorld& world, int p, double budget = 4e6);

// Report the first p (player 1) or p - 1 (player 2) own symbols.
Garbling truthful_strategy1(int N, int l, int p);
Garbling truthful_strategy2(int N, int l, int p);

struct TruthfulGuarantee {
  std::optional<double> lower;  // player 1 truthful, p <= l
  std::optional<double> upper;  // player 2 truthful, p <= l + 1
};

TruthfulGuarantee truthful_guarantee(const MarkovWorld& world, int l, int p, double budget = 1e8);

inline constexpr std::array<const char*, 8> kYFamilies{"Y_a",   "Y^c",     "Y_ab",    "Y^cd",
                                                       "Y^c_a", "Y^c_ab",  "Y^cd_a",  "Y^cd_ab"};
inline constexpr std::array<const char*, 7> kERatios{
    "Y_ab/Y_a", "Y^c_ab/Y^c_a", "Y^cd_a/Y^c_a", "Y^cd_ab/Y^cd_a", "Y^cd/Y^c", "Y^c_a/Y^c", "Y^cd_a/Y^cd"};

struct EventEReport {
  int N = 0;
  double alpha = 0.0;
  long tuples = 0;
  bool sampled = false;
  std::array<double, 8> max_deviation{};  // max |Z/N - 1| per family
  std::array<long, 7> ratio_pass{};
  long all_pass = 0;
  long ui_checked = 0;               // E-passing tuples whose UI ratios were recomputed
  long implication_violations = 0;   // of those, how many failed a UI ratio
  double pass_rate() const { return tuples ? static_cast<double>(all_pass) / tuples : 0.0; }
};

// Tuples (a, b, c, d) with a != b and c != d; exhaustive when N^4 <= budget.
EventEReport event_e_report(const MixingMatrix& S, double alpha, long budget, std::uint64_t seed);

struct UiCondition {
  std::string name;
  long checked = 0;
  long vacuous = 0;
  long passed = 0;
  long failed = 0;
  double worst = 0.0;  // max |ratio - 1/2| over non-vacuous tuples
  bool sampled = false;
};

struct UiReport {
  int l = 0;
  std::vector<UiCondition> conditions;
  bool all_pass() const;
};

UiReport check_ui(const MarkovWorld& world, int l, long budget, std::uint64_t seed);

}  // namespace infodist
